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

#ifndef SWEEP_OPTIMIZER_HPP
#define SWEEP_OPTIMIZER_HPP

#include <vector>

#include "sweep/adjoint.hpp"

namespace sweep {

/// Coordinate-wise clamp onto the box U. Idempotent and nonexpansive.
Vec project_onto_U(const ControlSet& U, const Vec& v);

struct ArgmaxResult {
  Vec maximizer;
  std::vector<int> tied_coordinates;  // coefficients exactly zero
};

/// Maximizes <c, u> over the box U coordinate-wise: hi on positive
/// coefficients, lo on negative ones, lo with a reported tie on zeros.
ArgmaxResult argmax_linear(const ControlSet& U, const Vec& c);

/// Allocation-free form for hot loops; `tied` may be null.
void argmax_linear_into(const ControlSet& U, const Vec& c, Vec& maximizer,
                        std::vector<int>* tied);

/// Gradient of J(u) = h(x(T)) + 0.5 integral |u - u_ref|^2 with respect to
/// the per-interval control values, assembled as the exact transpose of the
/// forward integrator's linearization. One column per control interval.
Mat cost_gradient(const Scenario& scenario, const Trajectory& traj,
                  const AdjointPath& path, const ControlSignal& u,
                  const ControlSignal& u_ref);

/// Discrete penalized cost h(x(T)) + 0.5 integral |u - u_ref|^2 for the
/// regularized trajectory already computed from u.
double penalized_cost(const Scenario& scenario, const Trajectory& traj,
                      const ControlSignal& u, const ControlSignal& u_ref);

struct SolveOptions {
  int max_iters = 200;
  double step0 = 1.0;
  double tol = 1e-6;            // stationarity ||u - proj(u - g)||_L2
  double armijo_decrease = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 30;
  int steps = 0;  // integrator steps; 0 derives h = epsilon/4
};

struct SolveReport {
  ControlSignal u_opt;
  Trajectory trajectory;
  AdjointPath adjoint;
  std::vector<double> cost_history;
  double pmp_residual = 0.0;    // discrete maximality residual at u_opt
  double stationarity = 0.0;
  int iterations = 0;
  bool converged = false;
  double epsilon = 0.0;
};

/// Projected gradient with Armijo backtracking on the penalized problem,
/// started from and anchored at u_ref.
SolveReport solve_penalized(const Scenario& scenario,
                            const ControlSignal& u_ref, double epsilon,
                            const SolveOptions& opts = {});

struct ContinuationRow {
  double epsilon = 0.0;
  int iterations = 0;
  bool converged = false;
  double cost = 0.0;
  double u_distance = 0.0;        // ||u_eps - u_ref||_L2
  double x_sup_distance = 0.0;    // ||x_eps - x_catch||_inf
  double cost_gap = 0.0;          // h(x_eps(T)) - h(x_catch(T)) at u_eps
  double pmp_residual = 0.0;
  double stationarity = 0.0;
};

struct ContinuationReport {
  std::vector<ContinuationRow> table;
  std::vector<SolveReport> solves;
};

/// Warm-started solves along a decreasing epsilon schedule.
ContinuationReport continuation(const Scenario& scenario,
                                const ControlSignal& u_ref,
                                const std::vector<double>& eps_schedule,
                                const SolveOptions& opts = {});

}  // namespace sweep

#endif
