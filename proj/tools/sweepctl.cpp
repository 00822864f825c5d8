/*
 Copyright 2026 The sweep authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

// Command-line front end over the sweep C API.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 failed verification thresholds.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sweep.h"

namespace {

int map_status(sweep_status status) {
  switch (status) {
    case SWEEP_OK:
      return 0;
    case SWEEP_ERROR_VALIDATION:
      return 1;
    case SWEEP_ERROR_NUMERICAL:
      return 2;
    default:
      return 2;
  }
}

// Atomic write: temp file in the target directory, then rename.
bool write_artifact(const std::filesystem::path& dir, const std::string& name,
                    const char* data, size_t size) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path target = dir / name;
  const std::filesystem::path temp = dir / (name + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(data, static_cast<std::streamsize>(size));
    if (!out) return false;
  }
  std::filesystem::rename(temp, target, ec);
  return !ec;
}

struct Invocation {
  std::string scenario_path;
  std::string out_dir = ".";
  double epsilon = 0.0;
  std::vector<double> eps_schedule;
  int intervals = 0;
  int steps_per_interval = 0;
  std::string pointing_mode;
};

int run(const std::string& command, const Invocation& in) {
  sweep_scenario* scenario = nullptr;
  sweep_status status = sweep_scenario_load(in.scenario_path.c_str(), &scenario);
  if (status != SWEEP_OK) {
    std::cerr << "sweepctl: " << sweep_last_error() << "\n";
    return map_status(status);
  }

  sweep_options options;
  sweep_options_init(&options);
  options.epsilon = in.epsilon;
  if (!in.eps_schedule.empty()) {
    options.eps_schedule = in.eps_schedule.data();
    options.eps_schedule_len = in.eps_schedule.size();
  }
  options.control_intervals = in.intervals;
  options.steps_per_interval = in.steps_per_interval;
  if (in.pointing_mode == "full")
    options.pointing_mode = SWEEP_POINTING_FULL;
  else if (in.pointing_mode == "sigma_only")
    options.pointing_mode = SWEEP_POINTING_SIGMA_ONLY;

  sweep_result* result = nullptr;
  if (command == "simulate")
    status = sweep_run_simulate(scenario, &options, &result);
  else if (command == "optimize")
    status = sweep_run_optimize(scenario, &options, &result);
  else if (command == "verify")
    status = sweep_run_verify(scenario, &options, &result);
  else
    status = sweep_run_sweep(scenario, &options, &result);

  int exit_code = 0;
  if (status != SWEEP_OK) {
    std::cerr << "sweepctl: " << sweep_last_error() << "\n";
    exit_code = map_status(status);
  } else {
    for (size_t i = 0; i < sweep_result_artifact_count(result); ++i) {
      const char* name = sweep_result_artifact_name(result, i);
      if (!write_artifact(in.out_dir, name,
                          sweep_result_artifact_data(result, i),
                          sweep_result_artifact_size(result, i))) {
        std::cerr << "sweepctl: cannot write " << in.out_dir << "/" << name
                  << "\n";
        exit_code = 2;
      }
    }
    if (const char* summary = sweep_result_summary(result))
      std::cout << summary;
    if (exit_code == 0 && !sweep_result_passed(result)) exit_code = 3;
  }
  sweep_result_free(result);
  sweep_scenario_free(scenario);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled sweeping process toolkit"};
  app.require_subcommand(1);

  Invocation in;
  const std::vector<std::string> commands = {"simulate", "optimize", "verify",
                                             "sweep"};
  const std::vector<std::string> descriptions = {
      "Integrate the regularized and catching-up dynamics",
      "Solve the penalized control problem by projected gradient",
      "Check the necessary optimality conditions on limit data",
      "Run the continuation over an epsilon schedule"};
  for (size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("scenario", in.scenario_path, "Scenario JSON file")
        ->required();
    sub->add_option("--epsilon", in.epsilon, "Regularization parameter");
    sub->add_option("--eps-schedule", in.eps_schedule,
                    "Comma-separated decreasing epsilons")
        ->delimiter(',');
    sub->add_option("--intervals", in.intervals, "Control intervals");
    sub->add_option("--steps-per-interval", in.steps_per_interval,
                    "Integrator steps per control interval");
    sub->add_option("--out", in.out_dir, "Output directory");
    sub->add_option("--pointing-mode", in.pointing_mode,
                    "Pointing threshold mode")
        ->check(CLI::IsMember({"full", "sigma_only"}));
  }

  CLI11_PARSE(app, argc, argv);
  return run(app.get_subcommands().front()->get_name(), in);
}
