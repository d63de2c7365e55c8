/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symplab/errors.hpp"
#include "symplab/scenario.hpp"

namespace symplab {

enum class TaskStatus { Pass = 0, VerificationFailed = 1, ConfigError = 2, NonConvergence = 3 };

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  int jobs = 1;
};

struct TaskOutcome {
  std::string name, kind;
  TaskStatus status = TaskStatus::Pass;
  std::string summary;  // one line, no trailing newline
  std::string report;   // JSON text written to <name>.report.json
  std::string csv;      // written to <name>.csv when non-empty
};

struct RunResult {
  std::vector<TaskOutcome> tasks;  // declaration order
  int exit_code = 0;               // 2 > 3 > 1 > 0 over task statuses
};

// Executes every task, writes `<task>.report.json` and `<task>.csv` into out_dir, and
// calls on_summary with each summary line in declaration order.
RunResult run_scenario(const Scenario& sc, const RunOptions& opts,
                       const std::function<void(const std::string&)>& on_summary = {});

// Exit-code class of an error code.
TaskStatus classify(ErrorCode code);

}  // namespace symplab
