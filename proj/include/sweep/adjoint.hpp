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

#ifndef SWEEP_ADJOINT_HPP
#define SWEEP_ADJOINT_HPP

#include <vector>

#include "sweep/dynamics.hpp"

namespace sweep {

/// Backward adjoint data on the trajectory grid. p solves the switched
/// adjoint equation of the penalized dynamics; xi, eta, p_normal are the
/// multiplier samples feeding the limit diagnostics.
struct AdjointPath {
  Vec times;
  Mat p;           // n x (K+1)
  Vec xi;          // <p, grad d> at nodes (zero strictly inside)
  Vec eta;         // d_{C(t)}(x) / epsilon at nodes
  Vec p_normal;    // <p, n(t, x)> with the band-extended normal
  double epsilon = 0.0;

  int nodes() const { return static_cast<int>(times.size()); }
  Vec terminal() const { return p.col(nodes() - 1); }
  Vec initial() const { return p.col(0); }
};

/// Backward pass on the grid of `traj`, exactly transposing the forward
/// integrator's linearization step by step. The rank-one stiff term is
/// damped by 1/(1 + h/epsilon) (Sherman-Morrison of the implicit update);
/// branch selection replays the stored per-step signed distances.
AdjointPath integrate_adjoint(const Scenario& scenario, const Trajectory& traj,
                              const ControlSignal& u, double epsilon);

/// One atom of the windowed vector measure: total mass of
/// (1/epsilon) xi(t) grad d  dt over [lo, hi], placed at the |mass|-weighted
/// centroid time.
struct MeasureAtom {
  double window_lo = 0.0;
  double window_hi = 0.0;
  double t_center = 0.0;
  Vec mass;
};

struct MultiplierReport {
  std::vector<MeasureAtom> atoms;
  double xi_mass_total = 0.0;  // (1/epsilon) integral of |xi|
  Vec eta_profile;             // eta at nodes
  double eta_max = 0.0;
};

/// Bins the measure density over `windows` uniform interior windows plus two
/// dedicated endpoint windows of width `endpoint_fraction * T`.
MultiplierReport extract_multipliers(const Scenario& scenario,
                                     const AdjointPath& path,
                                     const Trajectory& traj, double epsilon,
                                     int windows = 100,
                                     double endpoint_fraction = 0.01);

struct JumpRecord {
  double time = 0.0;
  Vec left;
  Vec right;
  double variation = 0.0;  // |p| variation inside the hosting window
};

struct LimitCurve {
  double epsilon = 0.0;
  Vec sample_times;
  Mat p_samples;             // n x samples
  Vec window_variation;      // total variation of p per window
  double xi_mass_total = 0.0;
  double bv_total = 0.0;     // sum |p_{k+1} - p_k| over the grid
  double sup_norm = 0.0;     // max |p| over the grid
};

struct LimitStudyReport {
  std::vector<double> schedule;
  std::vector<LimitCurve> curves;        // schedule order
  Vec window_edges;                      // shared variation windows
  std::vector<JumpRecord> jump_table;
  double p_normal_sup_interior = 0.0;    // sup |p^N| on I_d away from endpoints
  Trajectory finest_trajectory;          // the limit-estimate carrier
  AdjointPath finest_path;
  MultiplierReport finest_multipliers;
  BoundaryStructure structure;           // from the finest trajectory
};

/// Integrates trajectory and adjoint along a strictly decreasing epsilon
/// schedule, estimates the limit adjoint by the finest curve, and flags
/// persistent-variation windows as jumps. `steps_per_epsilon` must match the
/// schedule; each entry is the integrator step count for that epsilon.
LimitStudyReport limit_study(const Scenario& scenario, const ControlSignal& u,
                             const std::vector<double>& eps_schedule,
                             const std::vector<int>& steps_per_epsilon);

}  // namespace sweep

#endif
