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
#include <string>
#include <string_view>
#include <vector>

#include "symplab/geom.hpp"

namespace symplab {

// One `key = value` line.  Columns are 1-based; value_column points at the first
// character of the value (the opening quote for quoted values).
struct Entry {
  std::string key, value;
  int line = 0, key_column = 0, value_column = 0;
  bool quoted = false;
};

struct Section {
  std::string kind;  // scenario, hamiltonian, composite, family, loop, task
  std::string name;
  int line = 0, column = 0;
  std::vector<Entry> entries;

  const Entry* find(std::string_view key) const;
};

struct ScenarioSettings {
  std::string name;
  std::string manifold = "torus";
  double window = 4.0;
  int window_resolution = 256;
  std::uint64_t seed = 0;
  double step = 1.0 / 512.0;
  int max_iterations = 50;
};

struct Scenario {
  std::string path;
  std::string text;
  ScenarioSettings settings;
  std::vector<Section> sections;  // everything except [scenario], in file order

  Manifold manifold() const;
  const Section* find(std::string_view kind, std::string_view name) const;
  std::vector<const Section*> tasks() const;
};

// Parses and statically checks a scenario: syntax, known sections and keys, expression
// binding, references and acyclicity.  Every problem is a ConfigError with line/column.
Scenario parse_scenario(std::string_view text, std::string path = "<input>");
// Reads the file (unreadable files are a ConfigError at 0:0) and parses it.
Scenario load_scenario(const std::string& path);

// Helpers shared with the runner.
double entry_number(const Entry& e);
long long entry_integer(const Entry& e);
bool entry_bool(const Entry& e);
std::vector<std::string> entry_list(const Entry& e);

}  // namespace symplab
