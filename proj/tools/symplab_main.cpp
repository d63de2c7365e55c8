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
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "symplab/symplab.h"

namespace {

void print_line(const char* line, void*) {
  std::printf("%s\n", line);
  std::fflush(stdout);
}

int load(const std::string& path, symplab_scenario** sc) {
  const symplab_status st = symplab_scenario_load(path.c_str(), sc);
  if (st != SYMPLAB_OK) {
    std::fprintf(stderr, "%s:%s\n", path.c_str(), symplab_last_error());
    return SYMPLAB_CONFIG_ERROR;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Action spectra, monodromy and verification experiments on surfaces"};
  app.require_subcommand(1);

  std::string run_path, out_dir = ".";
  long long seed = -1;
  double step = 0.0;
  int jobs = 1;
  CLI::App* run = app.add_subcommand("run", "Run every task of a scenario");
  run->add_option("scenario", run_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory for reports and tables");
  run->add_option("--seed", seed, "Override the scenario seed")->check(CLI::NonNegativeNumber);
  run->add_option("--step", step, "Override the integrator step")->check(CLI::PositiveNumber);
  run->add_option("--jobs", jobs, "Tasks run concurrently")->check(CLI::PositiveNumber);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Parse and check a scenario without computing");
  validate->add_option("scenario", validate_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SYMPLAB_CONFIG_ERROR;
  }

  symplab_scenario* sc = nullptr;
  if (*validate) {
    if (const int rc = load(validate_path, &sc)) return rc;
    std::printf("ok: %zu task(s)\n", symplab_scenario_task_count(sc));
    symplab_scenario_destroy(sc);
    return 0;
  }

  if (const int rc = load(run_path, &sc)) return rc;
  symplab_run_options opts;
  symplab_run_options_init(&opts);
  opts.out_dir = out_dir.c_str();
  if (seed >= 0) {
    opts.has_seed = 1;
    opts.seed = static_cast<uint64_t>(seed);
  }
  if (step > 0.0) {
    opts.has_step = 1;
    opts.step = step;
  }
  opts.jobs = jobs;
  const symplab_status st = symplab_scenario_run(sc, &opts, print_line, nullptr);
  symplab_scenario_destroy(sc);
  if (st > SYMPLAB_NONCONVERGENCE) {
    std::fprintf(stderr, "error: %s\n", symplab_last_error());
    return SYMPLAB_CONFIG_ERROR;
  }
  return static_cast<int>(st);
}
