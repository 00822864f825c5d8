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

#ifndef SWEEP_DYNAMICS_HPP
#define SWEEP_DYNAMICS_HPP

#include "sweep/scenario.hpp"

namespace sweep {

/// Time-stamped states on the integrator grid, with node distances and the
/// per-step signed distances that fix the integrator branch decisions.
struct Trajectory {
  Vec times;                    // K+1 nodes
  Mat states;                   // n x (K+1)
  Mat velocities;               // n x (K+1), forward differences
  Vec distances;                // d_{C(t_k)}(x_k)
  Vec signed_distances;         // d_S(t_k, x_k)
  Vec step_signed_distances;    // K entries: d_S(t_{k+1}, x_k + h f_k)
  double epsilon = 0.0;         // 0 for catching-up runs
  int control_intervals = 0;
  double boundary_band = 0.0;   // suggested |d_S| band for contact detection

  int nodes() const { return static_cast<int>(times.size()); }
  int steps() const { return nodes() - 1; }
  double step_length() const { return times[1] - times[0]; }
  Vec terminal_state() const { return states.col(nodes() - 1); }
  /// Linear interpolation of the state at time t.
  Vec state_at(double t) const;
  /// Sup over common nodes of |x - other.x|; grids must nest or match.
  double sup_distance(const Trajectory& other) const;
};

/// Forward Euler step with the Moreau-Yosida penalty treated implicitly:
/// z = x_k + h f(x_k, u_k), then x_{k+1} = a z + (1-a) proj_{C(t_{k+1})}(z)
/// with a = 1/(1 + h/epsilon). Reduces to the catching-up update as a -> 0
/// and to the explicit Euler step while z stays inside C(t_{k+1}).
Trajectory integrate_regularized(const Scenario& scenario,
                                 const ControlSignal& u, double epsilon,
                                 int steps);

/// Catching-up discretization of the exact sweeping process:
/// x_{k+1} = proj_{C(t_{k+1})}(x_k + h f(x_k, u_k)).
Trajectory integrate_catching_up(const Scenario& scenario,
                                 const ControlSignal& u, int steps);

/// Locates strict sign changes of d_S along the interpolated trajectory by
/// bisection and assembles the contact intervals within the trajectory's
/// boundary band.
BoundaryStructure detect_crossings(const Scenario& scenario,
                                   const Trajectory& traj);

/// Ratio of observed penetration to the layer bound
/// epsilon (beta+gamma) (1 - exp(-t/epsilon)).
struct PenetrationReport {
  double max_ratio = 0.0;
  double max_distance = 0.0;
  double bound = 0.0;       // epsilon (beta + gamma)
  double tolerance = 0.0;   // 1 + 10 h / epsilon
  bool pass = true;
};

PenetrationReport penetration_report(const Trajectory& traj, double epsilon,
                                     double beta, double gamma);

/// Number of integrator steps giving step length close to `target_step`,
/// rounded up to a multiple of the control grid.
int steps_for(double horizon, int control_intervals, double target_step);

/// Stage point of one forward step. The adjoint passes recompute it through
/// this helper so branch decisions replay bit-for-bit.
inline Vec forward_stage(const Scenario& scenario, const Vec& x, const Vec& u,
                         double h) {
  return x + h * scenario.dynamics.eval(x, u);
}

}  // namespace sweep

#endif
