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

#ifndef SWEEP_RUNNER_HPP
#define SWEEP_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "sweep/scenario.hpp"

namespace sweep {

/// Command-level overrides; unset fields fall back to the scenario numerics.
struct RunOptions {
  std::optional<double> epsilon;
  std::vector<double> eps_schedule;
  int control_intervals = 0;   // 0: scenario value
  int steps_per_interval = 0;  // 0: derived per command
  std::optional<PointingMode> pointing_mode;
};

struct Artifact {
  std::string name;  // suggested file name
  std::string data;
};

struct RunResult {
  std::vector<Artifact> artifacts;
  std::string summary;  // human-readable lines
  bool passed = true;   // threshold verdict (exit code 3 when false)
};

RunResult run_simulate(const Scenario& scenario, const RunOptions& options);
RunResult run_optimize(const Scenario& scenario, const RunOptions& options);
RunResult run_verify(const Scenario& scenario, const RunOptions& options);
RunResult run_sweep(const Scenario& scenario, const RunOptions& options);

}  // namespace sweep

#endif
