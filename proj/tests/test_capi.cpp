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

#include <doctest.h>

#include <cstring>
#include <string>

#include "sweep.h"

namespace {

std::string scenario_path(const char* name) {
  return std::string(SWEEP_SCENARIO_DIR) + "/" + name;
}

struct ScenarioHandle {
  sweep_scenario* ptr = nullptr;
  ~ScenarioHandle() { sweep_scenario_free(ptr); }
};

struct ResultHandle {
  sweep_result* ptr = nullptr;
  ~ResultHandle() { sweep_result_free(ptr); }
};

bool has_artifact(const sweep_result* result, const char* name) {
  for (size_t i = 0; i < sweep_result_artifact_count(result); ++i)
    if (std::strcmp(sweep_result_artifact_name(result, i), name) == 0)
      return true;
  return false;
}

}  // namespace

TEST_CASE("scenario load, emit, and reparse through the C surface") {
  ScenarioHandle scenario;
  REQUIRE(sweep_scenario_load(scenario_path("example1.json").c_str(),
                              &scenario.ptr) == SWEEP_OK);
  char* emitted = nullptr;
  REQUIRE(sweep_scenario_emit(scenario.ptr, &emitted) == SWEEP_OK);
  REQUIRE(emitted != nullptr);

  ScenarioHandle reparsed;
  CHECK(sweep_scenario_parse(emitted, &reparsed.ptr) == SWEEP_OK);
  char* emitted2 = nullptr;
  REQUIRE(sweep_scenario_emit(reparsed.ptr, &emitted2) == SWEEP_OK);
  CHECK(std::string(emitted) == emitted2);
  sweep_string_free(emitted);
  sweep_string_free(emitted2);
}

TEST_CASE("error codes and messages") {
  sweep_scenario* out = nullptr;
  CHECK(sweep_scenario_parse(nullptr, &out) == SWEEP_ERROR_INVALID_ARGUMENT);
  CHECK(sweep_scenario_load("/nonexistent/file.json", &out) ==
        SWEEP_ERROR_VALIDATION);
  CHECK(std::string(sweep_last_error()).find("cannot open") !=
        std::string::npos);
  CHECK(sweep_scenario_parse("{\"schema_version\": 2}", &out) ==
        SWEEP_ERROR_VALIDATION);
  CHECK(out == nullptr);
}

TEST_CASE("simulate via the C surface produces the named artifacts") {
  ScenarioHandle scenario;
  REQUIRE(sweep_scenario_load(scenario_path("example1.json").c_str(),
                              &scenario.ptr) == SWEEP_OK);
  sweep_options options;
  sweep_options_init(&options);
  options.epsilon = 1e-3;

  ResultHandle result;
  REQUIRE(sweep_run_simulate(scenario.ptr, &options, &result.ptr) == SWEEP_OK);
  CHECK(sweep_result_passed(result.ptr) == 1);
  CHECK(has_artifact(result.ptr, "trajectory_regularized.csv"));
  CHECK(has_artifact(result.ptr, "trajectory_catching_up.csv"));
  CHECK(has_artifact(result.ptr, "penetration.json"));
  const char* summary = sweep_result_summary(result.ptr);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("PASS") != std::string::npos);

  // CSV header of the trajectory artifact.
  const char* data = sweep_result_artifact_data(result.ptr, 0);
  REQUIRE(data != nullptr);
  CHECK(std::string(data).substr(0, 22) == "t,x_1,x_2,d,d_signed\n0");
  CHECK(sweep_result_artifact_size(result.ptr, 0) == std::strlen(data));
}

TEST_CASE("determinism of artifacts across runs") {
  ScenarioHandle scenario;
  REQUIRE(sweep_scenario_load(scenario_path("example1.json").c_str(),
                              &scenario.ptr) == SWEEP_OK);
  sweep_options options;
  sweep_options_init(&options);
  options.epsilon = 1e-2;

  ResultHandle first, second;
  REQUIRE(sweep_run_simulate(scenario.ptr, &options, &first.ptr) == SWEEP_OK);
  REQUIRE(sweep_run_simulate(scenario.ptr, &options, &second.ptr) == SWEEP_OK);
  REQUIRE(sweep_result_artifact_count(first.ptr) ==
          sweep_result_artifact_count(second.ptr));
  for (size_t i = 0; i < sweep_result_artifact_count(first.ptr); ++i) {
    CHECK(std::string(sweep_result_artifact_data(first.ptr, i)) ==
          sweep_result_artifact_data(second.ptr, i));
  }
}

TEST_CASE("verify via the C surface") {
  ScenarioHandle scenario;
  REQUIRE(sweep_scenario_load(scenario_path("example1.json").c_str(),
                              &scenario.ptr) == SWEEP_OK);
  const double schedule[] = {1e-2, 1e-3};
  sweep_options options;
  sweep_options_init(&options);
  options.eps_schedule = schedule;
  options.eps_schedule_len = 2;

  ResultHandle result;
  REQUIRE(sweep_run_verify(scenario.ptr, &options, &result.ptr) == SWEEP_OK);
  CHECK(sweep_result_passed(result.ptr) == 1);
  CHECK(has_artifact(result.ptr, "pmp_report.json"));
  CHECK(has_artifact(result.ptr, "measure_atoms.json"));
  CHECK(has_artifact(result.ptr, "limit_curves.csv"));

  // Full mode flips the pointing verdict on this example; the run still
  // completes and reports the failure through the passed flag.
  options.pointing_mode = SWEEP_POINTING_FULL;
  ResultHandle strict;
  REQUIRE(sweep_run_verify(scenario.ptr, &options, &strict.ptr) == SWEEP_OK);
  CHECK(sweep_result_passed(strict.ptr) == 0);
}

TEST_CASE("optimize and sweep via the C surface") {
  ScenarioHandle scenario;
  REQUIRE(sweep_scenario_load(scenario_path("example1.json").c_str(),
                              &scenario.ptr) == SWEEP_OK);
  sweep_options options;
  sweep_options_init(&options);
  options.epsilon = 1e-2;

  ResultHandle opt;
  REQUIRE(sweep_run_optimize(scenario.ptr, &options, &opt.ptr) == SWEEP_OK);
  CHECK(sweep_result_passed(opt.ptr) == 1);
  CHECK(has_artifact(opt.ptr, "solve_report.json"));

  const double schedule[] = {1e-2, 1e-3};
  sweep_options sweep_opts;
  sweep_options_init(&sweep_opts);
  sweep_opts.eps_schedule = schedule;
  sweep_opts.eps_schedule_len = 2;
  ResultHandle swept;
  REQUIRE(sweep_run_sweep(scenario.ptr, &sweep_opts, &swept.ptr) == SWEEP_OK);
  CHECK(sweep_result_passed(swept.ptr) == 1);
  CHECK(has_artifact(swept.ptr, "continuation_table.csv"));
}

TEST_CASE("numerical failures surface as the numerical status") {
  // Shrink the prox radius so the epsilon band check trips.
  ScenarioHandle scenario;
  REQUIRE(sweep_scenario_load(scenario_path("example1.json").c_str(),
                              &scenario.ptr) == SWEEP_OK);
  char* text = nullptr;
  REQUIRE(sweep_scenario_emit(scenario.ptr, &text) == SWEEP_OK);
  std::string body(text);
  sweep_string_free(text);
  const auto pos = body.find("\"rho\": 1000000.0");
  REQUIRE(pos != std::string::npos);
  body.replace(pos, 16, "\"rho\": 1e-4");

  ScenarioHandle tight;
  REQUIRE(sweep_scenario_parse(body.c_str(), &tight.ptr) == SWEEP_OK);
  sweep_options options;
  sweep_options_init(&options);
  options.epsilon = 1e-2;  // epsilon (beta+gamma) far above rho/2
  sweep_result* result = nullptr;
  CHECK(sweep_run_simulate(tight.ptr, &options, &result) ==
        SWEEP_ERROR_VALIDATION);
  CHECK(result == nullptr);
}
