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

#include "sweep/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "sweep/errors.hpp"

namespace sweep {

Vec project_onto_U(const ControlSet& U, const Vec& v) {
  if (v.size() != U.lo.size())
    throw ValidationError("control vector dimension does not match U");
  return v.cwiseMax(U.lo).cwiseMin(U.hi);
}

void argmax_linear_into(const ControlSet& U, const Vec& c, Vec& maximizer,
                        std::vector<int>* tied) {
  if (c.size() != U.lo.size())
    throw ValidationError("coefficient dimension does not match U");
  maximizer.resize(c.size());
  for (int i = 0; i < c.size(); ++i) {
    if (c[i] > 0.0) {
      maximizer[i] = U.hi[i];
    } else {
      maximizer[i] = U.lo[i];
      if (c[i] == 0.0 && tied) tied->push_back(i);
    }
  }
}

ArgmaxResult argmax_linear(const ControlSet& U, const Vec& c) {
  ArgmaxResult result;
  argmax_linear_into(U, c, result.maximizer, &result.tied_coordinates);
  return result;
}

double penalized_cost(const Scenario& scenario, const Trajectory& traj,
                      const ControlSignal& u, const ControlSignal& u_ref) {
  if (u.intervals() != u_ref.intervals())
    throw ValidationError("control and anchor live on different grids");
  const double dt = u.interval_length();
  return scenario.cost.value(traj.terminal_state()) +
         0.5 * dt * (u.values - u_ref.values).squaredNorm();
}

Mat cost_gradient(const Scenario& scenario, const Trajectory& traj,
                  const AdjointPath& path, const ControlSignal& u,
                  const ControlSignal& u_ref) {
  const int steps = traj.steps();
  if (path.nodes() != traj.nodes())
    throw ValidationError("trajectory and adjoint grids do not match");
  if (traj.control_intervals != u.intervals() ||
      u.intervals() != u_ref.intervals())
    throw ValidationError("control grids do not match the trajectory");
  const double h = traj.step_length();
  const double epsilon = traj.epsilon;
  const double a = 1.0 / (1.0 + h / epsilon);
  const int steps_per_interval = steps / u.intervals();

  Mat grad = Mat::Zero(u.dim(), u.intervals());
  for (int k = 0; k < steps; ++k) {
    const Vec& xk = traj.states.col(k);
    const int interval = k / steps_per_interval;
    const Vec& uk = u.values.col(interval);
    // lambda = -p; w = (d x_{k+1} / d z)^T lambda evaluated through the
    // stored branch decision.
    Vec w = -path.p.col(k + 1);
    const double sd = traj.step_signed_distances[k];
    if (sd > 0.0) {
      const double t_next = traj.times[k + 1];
      const Vec z = forward_stage(scenario, xk, uk, h);
      const Vec g = scenario.set.distance_gradient(t_next, z);
      const Mat hess = scenario.set.distance_hessian(t_next, z);
      w -= (1.0 - a) * (sd * (hess * w) + g * g.dot(w));
    }
    grad.col(interval) += h * scenario.dynamics.jac_u(xk, uk).transpose() * w;
  }
  const double dt = u.interval_length();
  grad += dt * (u.values - u_ref.values);
  return grad;
}

namespace {

double stationarity_norm(const ControlSet& U, const ControlSignal& u,
                         const Mat& grad) {
  double acc = 0.0;
  for (int k = 0; k < u.intervals(); ++k) {
    const Vec step = u.values.col(k) - grad.col(k);
    acc += (u.values.col(k) - project_onto_U(U, step)).squaredNorm();
  }
  return std::sqrt(u.interval_length() * acc);
}

double maximality_residual(const Scenario& scenario, const Trajectory& traj,
                           const AdjointPath& path, const ControlSignal& u,
                           const ControlSignal& u_ref) {
  // Discrete maximality of the penalized Hamiltonian pairing:
  // max_u { <p, Ju u> - <u_k - u_ref, u> } against the chosen u_k.
  const int steps = traj.steps();
  const int steps_per_interval = steps / u.intervals();
  double residual = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const int interval = std::min(k / steps_per_interval, u.intervals() - 1);
    const Vec& uk = u.values.col(interval);
    const Vec& uref = u_ref.values.col(interval);
    const Vec coeff =
        scenario.dynamics.jac_u(traj.states.col(k), uk).transpose() *
            path.p.col(k) -
        (uk - uref);
    const ArgmaxResult best = argmax_linear(scenario.control_set, coeff);
    residual = std::max(residual, coeff.dot(best.maximizer) - coeff.dot(uk));
  }
  return residual;
}

int solve_steps(const Scenario& scenario, double epsilon,
                const SolveOptions& opts) {
  if (opts.steps > 0) return opts.steps;
  return steps_for(scenario.horizon, scenario.numerics.control_intervals,
                   epsilon / 4.0);
}

}  // namespace

namespace {

SolveReport solve_from(const Scenario& scenario, const ControlSignal& u_ref,
                       const ControlSignal& start, double epsilon,
                       const SolveOptions& opts) {
  u_ref.validate(scenario.control_set);
  start.validate(scenario.control_set);
  const int steps = solve_steps(scenario, epsilon, opts);

  SolveReport report;
  report.epsilon = epsilon;
  ControlSignal u = start;

  Trajectory traj = integrate_regularized(scenario, u, epsilon, steps);
  AdjointPath path = integrate_adjoint(scenario, traj, u, epsilon);
  double cost = penalized_cost(scenario, traj, u, u_ref);
  report.cost_history.push_back(cost);

  for (int it = 0; it < opts.max_iters; ++it) {
    const Mat grad = cost_gradient(scenario, traj, path, u, u_ref);
    report.stationarity = stationarity_norm(scenario.control_set, u, grad);
    report.iterations = it;
    if (report.stationarity <= opts.tol) {
      report.converged = true;
      break;
    }

    double step = opts.step0;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      ControlSignal candidate = u;
      for (int k = 0; k < u.intervals(); ++k)
        candidate.values.col(k) = project_onto_U(
            scenario.control_set, u.values.col(k) - step * grad.col(k));
      const double predicted =
          (grad.array() * (candidate.values - u.values).array()).sum();
      Trajectory cand_traj =
          integrate_regularized(scenario, candidate, epsilon, steps);
      const double cand_cost =
          penalized_cost(scenario, cand_traj, candidate, u_ref);
      if (cand_cost <= cost + opts.armijo_decrease * predicted) {
        u = std::move(candidate);
        traj = std::move(cand_traj);
        path = integrate_adjoint(scenario, traj, u, epsilon);
        cost = cand_cost;
        report.cost_history.push_back(cost);
        accepted = true;
        break;
      }
      step *= opts.backtrack_factor;
    }
    if (!accepted)
      throw NonDecreasingCost(
          "line search failed after " + std::to_string(opts.max_backtracks) +
          " halvings; the gradient is inconsistent with the cost");
  }
  if (!report.converged) report.iterations = opts.max_iters;

  report.pmp_residual = maximality_residual(scenario, traj, path, u, u_ref);
  report.u_opt = std::move(u);
  report.trajectory = std::move(traj);
  report.adjoint = std::move(path);
  return report;
}

}  // namespace

SolveReport solve_penalized(const Scenario& scenario,
                            const ControlSignal& u_ref, double epsilon,
                            const SolveOptions& opts) {
  return solve_from(scenario, u_ref, u_ref, epsilon, opts);
}

ContinuationReport continuation(const Scenario& scenario,
                                const ControlSignal& u_ref,
                                const std::vector<double>& eps_schedule,
                                const SolveOptions& opts) {
  if (eps_schedule.empty()) throw ValidationError("empty epsilon schedule");
  for (std::size_t i = 1; i < eps_schedule.size(); ++i)
    if (eps_schedule[i] >= eps_schedule[i - 1])
      throw ValidationError("epsilon schedule must be strictly decreasing");

  ContinuationReport report;
  ControlSignal warm = u_ref;
  for (double eps : eps_schedule) {
    SolveOptions local = opts;
    local.steps = solve_steps(scenario, eps, opts);
    SolveReport solve = solve_from(scenario, u_ref, warm, eps, local);

    Trajectory catch_traj = integrate_catching_up(
        scenario, solve.u_opt, solve.trajectory.steps());

    ContinuationRow row;
    row.epsilon = eps;
    row.iterations = solve.iterations;
    row.converged = solve.converged;
    row.cost = solve.cost_history.back();
    row.u_distance = solve.u_opt.l2_distance(u_ref);
    row.x_sup_distance = solve.trajectory.sup_distance(catch_traj);
    row.cost_gap = scenario.cost.value(solve.trajectory.terminal_state()) -
                   scenario.cost.value(catch_traj.terminal_state());
    row.pmp_residual = solve.pmp_residual;
    row.stationarity = solve.stationarity;
    report.table.push_back(row);
    warm = solve.u_opt;
    report.solves.push_back(std::move(solve));
  }
  return report;
}

}  // namespace sweep
