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

#include "sweep/runner.hpp"

#include <cmath>

#include "sweep/errors.hpp"
#include "sweep/pmp.hpp"
#include "sweep/report_io.hpp"

namespace sweep {

namespace {

// Default step refinement: h = epsilon/4 matches the forward error targets;
// the limit diagnostics need the boundary layer resolved, h = epsilon/256.
constexpr double kSimulateRefinement = 4.0;
constexpr double kVerifyRefinement = 256.0;

double pick_epsilon(const Scenario& scenario, const RunOptions& options,
                    const char* command) {
  if (options.epsilon) return *options.epsilon;
  if (scenario.numerics.epsilon) return *scenario.numerics.epsilon;
  if (!scenario.numerics.eps_schedule.empty())
    return scenario.numerics.eps_schedule.back();
  throw ValidationError(std::string(command) +
                        " needs an epsilon (flag or numerics block)");
}

std::vector<double> pick_schedule(const Scenario& scenario,
                                  const RunOptions& options,
                                  const char* command) {
  if (!options.eps_schedule.empty()) return options.eps_schedule;
  if (!scenario.numerics.eps_schedule.empty())
    return scenario.numerics.eps_schedule;
  if (options.epsilon) return {*options.epsilon};
  if (scenario.numerics.epsilon) return {*scenario.numerics.epsilon};
  throw ValidationError(std::string(command) +
                        " needs an epsilon schedule (flag or numerics block)");
}

ControlSignal pick_control(const Scenario& scenario, int intervals,
                           const char* command) {
  const ControlSignal& u = scenario.require_control(command);
  if (u.intervals() == intervals) return u;
  // Resample only a constant signal onto a different grid.
  bool constant = true;
  for (int k = 1; k < u.intervals(); ++k)
    if (u.values.col(k) != u.values.col(0)) constant = false;
  if (!constant)
    throw ValidationError(
        "control_intervals override requires a constant control block");
  return ControlSignal::constant(u.values.col(0), intervals, scenario.horizon);
}

int pick_intervals(const Scenario& scenario, const RunOptions& options) {
  return options.control_intervals > 0 ? options.control_intervals
                                       : scenario.numerics.control_intervals;
}

int pick_steps(const Scenario& scenario, const RunOptions& options,
               int intervals, double epsilon, double refinement) {
  int per_interval = options.steps_per_interval > 0
                         ? options.steps_per_interval
                         : scenario.numerics.steps_per_interval;
  if (per_interval > 0) return per_interval * intervals;
  return steps_for(scenario.horizon, intervals, epsilon / refinement);
}

PointingMode pick_pointing(const Scenario& scenario,
                           const RunOptions& options) {
  return options.pointing_mode ? *options.pointing_mode
                               : scenario.numerics.pointing_mode;
}

}  // namespace

RunResult run_simulate(const Scenario& scenario, const RunOptions& options) {
  const double epsilon = pick_epsilon(scenario, options, "simulate");
  const int intervals = pick_intervals(scenario, options);
  const ControlSignal u = pick_control(scenario, intervals, "simulate");
  const int steps =
      pick_steps(scenario, options, intervals, epsilon, kSimulateRefinement);

  const Trajectory reg = integrate_regularized(scenario, u, epsilon, steps);
  const Trajectory catching = integrate_catching_up(scenario, u, steps);
  const PenetrationReport pen = penetration_report(
      reg, epsilon, scenario.f_bound, scenario.set.set_lipschitz());

  RunResult result;
  result.artifacts.push_back({"trajectory_regularized.csv",
                              trajectory_csv(reg)});
  result.artifacts.push_back({"trajectory_catching_up.csv",
                              trajectory_csv(catching)});
  result.artifacts.push_back({"penetration.json",
                              penetration_json(pen, epsilon)});
  result.passed = pen.pass;
  result.summary =
      std::string(pen.pass ? "PASS" : "FAIL") + "  penetration bound (ratio " +
      format_double(pen.max_ratio) + " vs tolerance " +
      format_double(pen.tolerance) + ")\n" + "sup |x_reg - x_catch| = " +
      format_double(reg.sup_distance(catching)) + "\n";
  return result;
}

RunResult run_optimize(const Scenario& scenario, const RunOptions& options) {
  const double epsilon = pick_epsilon(scenario, options, "optimize");
  const int intervals = pick_intervals(scenario, options);
  const ControlSignal u_ref = pick_control(scenario, intervals, "optimize");
  SolveOptions solve_options;
  solve_options.steps =
      pick_steps(scenario, options, intervals, epsilon, kSimulateRefinement);

  const SolveReport report =
      solve_penalized(scenario, u_ref, epsilon, solve_options);

  RunResult result;
  result.artifacts.push_back({"trajectory_opt.csv",
                              trajectory_csv(report.trajectory)});
  result.artifacts.push_back({"adjoint_opt.csv", adjoint_csv(report.adjoint)});
  result.artifacts.push_back(
      {"solve_report.json",
       solve_report_json(report, "trajectory_opt.csv", "adjoint_opt.csv")});
  result.passed = report.converged;
  result.summary =
      std::string(report.converged ? "PASS" : "FAIL") + "  converged in " +
      std::to_string(report.iterations) + " iterations, cost " +
      format_double(report.cost_history.back()) + ", stationarity " +
      format_double(report.stationarity) + ", pmp residual " +
      format_double(report.pmp_residual) + "\n";
  return result;
}

RunResult run_verify(const Scenario& scenario, const RunOptions& options) {
  const std::vector<double> schedule =
      pick_schedule(scenario, options, "verify");
  const int intervals = pick_intervals(scenario, options);
  const ControlSignal u = pick_control(scenario, intervals, "verify");

  std::vector<int> steps;
  steps.reserve(schedule.size());
  for (double eps : schedule)
    steps.push_back(
        pick_steps(scenario, options, intervals, eps, kVerifyRefinement));

  const LimitStudyReport limit = limit_study(scenario, u, schedule, steps);
  const Trajectory catching =
      integrate_catching_up(scenario, u, steps.back());
  const BoundaryStructure structure = detect_crossings(scenario, catching);
  const PMPReport report =
      verify_theorem(scenario, catching, u, limit, structure,
                     pick_pointing(scenario, options));

  RunResult result;
  result.artifacts.push_back({"pmp_report.json", pmp_report_json(report)});
  result.artifacts.push_back({"adjoint_finest.csv",
                              adjoint_csv(limit.finest_path)});
  result.artifacts.push_back({"trajectory_catching_up.csv",
                              trajectory_csv(catching)});
  result.artifacts.push_back({"limit_curves.csv", limit_curves_csv(limit)});
  result.artifacts.push_back({"measure_atoms.json",
                              atoms_json(limit.finest_multipliers)});
  result.passed = report.all_pass;
  result.summary = pmp_report_summary(report);
  return result;
}

RunResult run_sweep(const Scenario& scenario, const RunOptions& options) {
  const std::vector<double> schedule = pick_schedule(scenario, options, "sweep");
  const int intervals = pick_intervals(scenario, options);
  const ControlSignal u_ref = pick_control(scenario, intervals, "sweep");

  SolveOptions solve_options;
  if (options.steps_per_interval > 0 ||
      scenario.numerics.steps_per_interval > 0)
    solve_options.steps = pick_steps(scenario, options, intervals,
                                     schedule.front(), kSimulateRefinement);

  const ContinuationReport report =
      continuation(scenario, u_ref, schedule, solve_options);

  RunResult result;
  result.artifacts.push_back({"continuation_table.csv",
                              continuation_table_csv(report)});
  const SolveReport& last = report.solves.back();
  result.artifacts.push_back({"trajectory_final.csv",
                              trajectory_csv(last.trajectory)});
  result.artifacts.push_back(
      {"solve_report_final.json",
       solve_report_json(last, "trajectory_final.csv", "")});
  bool all = true;
  for (const ContinuationRow& row : report.table) all = all && row.converged;
  result.passed = all;
  std::string summary;
  for (const ContinuationRow& row : report.table) {
    summary += std::string(row.converged ? "PASS" : "FAIL") + "  eps " +
               format_double(row.epsilon) + ": |u - u_ref| = " +
               format_double(row.u_distance) + ", |x - x_catch| = " +
               format_double(row.x_sup_distance) + ", cost " +
               format_double(row.cost) + "\n";
  }
  result.summary = std::move(summary);
  return result;
}

}  // namespace sweep
