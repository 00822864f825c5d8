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

#ifndef SWEEP_PMP_HPP
#define SWEEP_PMP_HPP

#include <string>
#include <vector>

#include "sweep/adjoint.hpp"
#include "sweep/optimizer.hpp"

namespace sweep {

enum class PointingVerdict { M1, M2, Neither };

/// Evaluation of the inward/outward pointing condition
/// L(t,u) = dd_S/dt + <grad d_S, f(x(t), u)> over the contact set and U.
struct PointingReport {
  PointingVerdict verdict = PointingVerdict::Neither;
  PointingMode mode = PointingMode::SigmaOnly;
  double margin = 0.0;       // distance to the deciding threshold
  double min_L = 0.0;
  double max_L = 0.0;
  double threshold_m1 = 0.0;  // gamma+beta+sigma (full) or sigma (sigma_only)
  double threshold_m2 = 0.0;  // -sigma
  bool vacuous = false;       // empty contact set
};

PointingReport check_pointing(const Scenario& scenario, const Trajectory& traj,
                              const ControlSignal& u,
                              const BoundaryStructure& structure,
                              PointingMode mode);

struct WeakEquationTerm {
  int coordinate = 0;
  std::string shape;
  double defect = 0.0;
};

struct WeakEquationReport {
  double max_defect = 0.0;
  std::vector<WeakEquationTerm> terms;
};

/// Defect of the distributional adjoint equation against the test family
/// (coordinate indicators) x {1, t, t^2, sin(pi t/T), cos(pi t/T)}:
/// the Stieltjes term is the telescoping sum over grid increments, the
/// measure term pairs test values at atom centroids with windowed masses,
/// and the two Lebesgue terms use the trapezoid rule. Defects are normalized
/// by the sup of the test function.
WeakEquationReport verify_weak_equation(const Scenario& scenario,
                                        const Trajectory& ref_traj,
                                        const ControlSignal& u,
                                        const AdjointPath& path,
                                        const MultiplierReport& multipliers);

struct StructureFlags {
  bool i_boundary_is_terminal_interval = true;  // M1 case
  bool i_boundary_subset_zero = true;           // M2 case
  bool jumps_normal_only = true;
  bool continuous_at_tbar = true;               // M1 case
};

struct PMPReport {
  PointingReport pointing;
  double transversality_residual = 0.0;
  double maximality_residual = 0.0;
  Vec maximality_selection_min;   // per-coordinate range of the maximizer
  Vec maximality_selection_max;
  std::vector<int> maximality_tie_counts;
  double normal_component_sup = 0.0;
  double weak_equation_residual = 0.0;
  WeakEquationReport weak_details;
  StructureFlags structure;
  double stray_atom_mass_fraction = 0.0;  // mass outside I_d and endpoints
  Thresholds thresholds;

  bool transversality_pass = false;
  bool maximality_pass = false;
  bool normal_component_pass = false;
  bool weak_equation_pass = false;
  bool pointing_pass = false;
  bool structure_pass = false;
  bool all_pass = false;
};

/// Runs every necessary-condition check on the limit data: transversality,
/// maximality with tie disclosure, vanishing normal component, weak adjoint
/// equation, interval structure and jump direction flags.
///
/// `ref_traj` is the exact-solution stand-in (catching-up) on the same grid
/// as the finest curve of `limit`; `structure` is its contact structure.
PMPReport verify_theorem(const Scenario& scenario, const Trajectory& ref_traj,
                         const ControlSignal& u, const LimitStudyReport& limit,
                         const BoundaryStructure& structure,
                         PointingMode pointing_mode);

const char* to_string(PointingVerdict v);

}  // namespace sweep

#endif
