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

#include "sweep.h"

#include <cstring>
#include <new>
#include <string>

#include "sweep/errors.hpp"
#include "sweep/runner.hpp"
#include "sweep/scenario_io.hpp"

struct sweep_scenario {
  sweep::Scenario model;
};

struct sweep_result {
  sweep::RunResult run;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

sweep_status guard(sweep_status code, const std::string& message) {
  set_error(message);
  return code;
}

template <typename Fn>
sweep_status wrap(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SWEEP_OK;
  } catch (const sweep::ValidationError& e) {
    return guard(SWEEP_ERROR_VALIDATION, e.what());
  } catch (const sweep::NumericalError& e) {
    return guard(SWEEP_ERROR_NUMERICAL, e.what());
  } catch (const std::bad_alloc&) {
    return guard(SWEEP_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return guard(SWEEP_ERROR_INTERNAL, e.what());
  }
}

sweep::RunOptions convert(const sweep_options* options) {
  sweep::RunOptions out;
  if (!options) return out;
  if (options->epsilon > 0.0) out.epsilon = options->epsilon;
  if (options->eps_schedule && options->eps_schedule_len > 0)
    out.eps_schedule.assign(options->eps_schedule,
                            options->eps_schedule + options->eps_schedule_len);
  out.control_intervals = options->control_intervals;
  out.steps_per_interval = options->steps_per_interval;
  if (options->pointing_mode == SWEEP_POINTING_SIGMA_ONLY)
    out.pointing_mode = sweep::PointingMode::SigmaOnly;
  else if (options->pointing_mode == SWEEP_POINTING_FULL)
    out.pointing_mode = sweep::PointingMode::Full;
  return out;
}

using Runner = sweep::RunResult (*)(const sweep::Scenario&,
                                    const sweep::RunOptions&);

sweep_status run_command(Runner runner, const sweep_scenario* scenario,
                         const sweep_options* options, sweep_result** out) {
  if (!scenario || !out)
    return guard(SWEEP_ERROR_INVALID_ARGUMENT, "null scenario or output handle");
  *out = nullptr;
  return wrap([&] {
    auto result = new sweep_result{runner(scenario->model, convert(options))};
    *out = result;
  });
}

}  // namespace

extern "C" {

const char* sweep_version(void) { return "0.1.0"; }

const char* sweep_last_error(void) { return g_last_error.c_str(); }

void sweep_options_init(sweep_options* options) {
  if (!options) return;
  options->epsilon = 0.0;
  options->eps_schedule = nullptr;
  options->eps_schedule_len = 0;
  options->control_intervals = 0;
  options->steps_per_interval = 0;
  options->pointing_mode = SWEEP_POINTING_DEFAULT;
}

sweep_status sweep_scenario_parse(const char* json_text, sweep_scenario** out) {
  if (!json_text || !out)
    return guard(SWEEP_ERROR_INVALID_ARGUMENT, "null text or output handle");
  *out = nullptr;
  return wrap([&] {
    *out = new sweep_scenario{sweep::parse_scenario(json_text)};
  });
}

sweep_status sweep_scenario_load(const char* path, sweep_scenario** out) {
  if (!path || !out)
    return guard(SWEEP_ERROR_INVALID_ARGUMENT, "null path or output handle");
  *out = nullptr;
  return wrap([&] { *out = new sweep_scenario{sweep::load_scenario(path)}; });
}

sweep_status sweep_scenario_emit(const sweep_scenario* scenario,
                                 char** json_out) {
  if (!scenario || !json_out)
    return guard(SWEEP_ERROR_INVALID_ARGUMENT, "null scenario or output");
  *json_out = nullptr;
  return wrap([&] {
    const std::string text = sweep::emit_scenario(scenario->model);
    *json_out = new char[text.size() + 1];
    std::memcpy(*json_out, text.c_str(), text.size() + 1);
  });
}

void sweep_scenario_free(sweep_scenario* scenario) { delete scenario; }

void sweep_string_free(char* text) { delete[] text; }

sweep_status sweep_run_simulate(const sweep_scenario* scenario,
                                const sweep_options* options,
                                sweep_result** out) {
  return run_command(&sweep::run_simulate, scenario, options, out);
}

sweep_status sweep_run_optimize(const sweep_scenario* scenario,
                                const sweep_options* options,
                                sweep_result** out) {
  return run_command(&sweep::run_optimize, scenario, options, out);
}

sweep_status sweep_run_verify(const sweep_scenario* scenario,
                              const sweep_options* options,
                              sweep_result** out) {
  return run_command(&sweep::run_verify, scenario, options, out);
}

sweep_status sweep_run_sweep(const sweep_scenario* scenario,
                             const sweep_options* options,
                             sweep_result** out) {
  return run_command(&sweep::run_sweep, scenario, options, out);
}

size_t sweep_result_artifact_count(const sweep_result* result) {
  return result ? result->run.artifacts.size() : 0;
}

const char* sweep_result_artifact_name(const sweep_result* result, size_t i) {
  if (!result || i >= result->run.artifacts.size()) return nullptr;
  return result->run.artifacts[i].name.c_str();
}

const char* sweep_result_artifact_data(const sweep_result* result, size_t i) {
  if (!result || i >= result->run.artifacts.size()) return nullptr;
  return result->run.artifacts[i].data.c_str();
}

size_t sweep_result_artifact_size(const sweep_result* result, size_t i) {
  if (!result || i >= result->run.artifacts.size()) return 0;
  return result->run.artifacts[i].data.size();
}

const char* sweep_result_summary(const sweep_result* result) {
  return result ? result->run.summary.c_str() : nullptr;
}

int sweep_result_passed(const sweep_result* result) {
  return result && result->run.passed ? 1 : 0;
}

void sweep_result_free(sweep_result* result) { delete result; }

}  // extern "C"
