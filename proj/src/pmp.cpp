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

#include "sweep/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sweep/errors.hpp"

namespace sweep {

const char* to_string(PointingVerdict v) {
  switch (v) {
    case PointingVerdict::M1:
      return "M1";
    case PointingVerdict::M2:
      return "M2";
    case PointingVerdict::Neither:
      return "neither";
  }
  return "?";
}

PointingReport check_pointing(const Scenario& scenario, const Trajectory& traj,
                              const ControlSignal& u,
                              const BoundaryStructure& structure,
                              PointingMode mode) {
  PointingReport report;
  report.mode = mode;
  const double sigma = scenario.pointing_margin;
  const double full_threshold =
      scenario.set.set_lipschitz() + scenario.f_bound + sigma;
  report.threshold_m1 = mode == PointingMode::Full ? full_threshold : sigma;
  report.threshold_m2 = -sigma;

  if (structure.i_boundary.empty()) {
    report.vacuous = true;
    report.verdict = PointingVerdict::M1;
    report.margin = std::numeric_limits<double>::infinity();
    return report;
  }

  // Control sample set: box vertices, 100 deterministic interior points,
  // and the reference control values.
  std::vector<Vec> samples = scenario.control_set.vertices();
  std::mt19937 rng(20260808u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int m = scenario.control_set.dim();
  for (int s = 0; s < 100; ++s) {
    Vec v(m);
    for (int i = 0; i < m; ++i) {
      const double w = unit(rng);
      v[i] = (1.0 - w) * scenario.control_set.lo[i] +
             w * scenario.control_set.hi[i];
    }
    samples.push_back(std::move(v));
  }
  for (int k = 0; k < u.intervals(); ++k) samples.push_back(u.values.col(k));

  Mat sample_mat(m, samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j)
    sample_mat.col(j) = samples[j];

  // For state-independent Jacobians, <n, f(x,u)> is affine in u and the
  // sample sweep collapses to one matrix-vector product per node.
  const bool affine_in_u = scenario.dynamics.constant_jacobians();
  Mat ju;
  if (affine_in_u)
    ju = scenario.dynamics.jac_u(scenario.x0, samples.front());

  double min_L = std::numeric_limits<double>::infinity();
  double max_L = -std::numeric_limits<double>::infinity();
  Eigen::RowVectorXd values(samples.size());
  for (int k = 0; k < traj.nodes(); ++k) {
    const double t = traj.times[k];
    bool in_contact = false;
    for (const Interval& iv : structure.i_boundary)
      if (iv.contains(t)) in_contact = true;
    if (!in_contact) continue;
    const Vec& x = traj.states.col(k);
    const double dt_term = scenario.set.set_velocity(t, x);
    const Vec normal = scenario.set.boundary_normal(t, x);
    if (affine_in_u) {
      const Vec& u0 = samples.front();
      const double base =
          dt_term + normal.dot(scenario.dynamics.eval(x, u0));
      const Vec slope = ju.transpose() * normal;
      values.noalias() = slope.transpose() * sample_mat;
      const double offset = base - slope.dot(u0);
      min_L = std::min(min_L, offset + values.minCoeff());
      max_L = std::max(max_L, offset + values.maxCoeff());
    } else {
      for (const Vec& uv : samples) {
        const double L = dt_term + normal.dot(scenario.dynamics.eval(x, uv));
        min_L = std::min(min_L, L);
        max_L = std::max(max_L, L);
      }
    }
  }
  report.min_L = min_L;
  report.max_L = max_L;
  if (min_L >= report.threshold_m1) {
    report.verdict = PointingVerdict::M1;
    report.margin = min_L - report.threshold_m1;
  } else if (max_L <= report.threshold_m2) {
    report.verdict = PointingVerdict::M2;
    report.margin = report.threshold_m2 - max_L;
  } else {
    report.verdict = PointingVerdict::Neither;
    report.margin =
        -std::min(report.threshold_m1 - min_L, max_L - report.threshold_m2);
  }
  return report;
}

namespace {

struct Shape {
  const char* name;
  double (*value)(double t, double T);
};

constexpr Shape kShapes[] = {
    {"1", [](double, double) { return 1.0; }},
    {"t", [](double t, double) { return t; }},
    {"t^2", [](double t, double) { return t * t; }},
    {"sin(pi t/T)",
     [](double t, double T) { return std::sin(std::numbers::pi * t / T); }},
    {"cos(pi t/T)",
     [](double t, double T) { return std::cos(std::numbers::pi * t / T); }},
};

}  // namespace

WeakEquationReport verify_weak_equation(const Scenario& scenario,
                                        const Trajectory& ref_traj,
                                        const ControlSignal& u,
                                        const AdjointPath& path,
                                        const MultiplierReport& multipliers) {
  if (ref_traj.nodes() != path.nodes())
    throw ValidationError(
        "weak equation requires the reference trajectory and adjoint on the "
        "same grid");
  const int nodes = path.nodes();
  const int n = static_cast<int>(path.p.rows());
  const double T = path.times[nodes - 1];
  const double h = ref_traj.step_length();
  const int steps_per_interval = ref_traj.steps() / u.intervals();

  // Node vectors of the two Lebesgue integrands, hoisted out of the test
  // function loop: eta Hess(d) p and (d/dx f)^T p.
  const bool hoist_jac = scenario.dynamics.constant_jacobians();
  Mat jx_t;
  if (hoist_jac)
    jx_t = scenario.dynamics.jac_x(ref_traj.states.col(0), u.values.col(0))
               .transpose();
  Mat curvature_density = Mat::Zero(n, nodes);
  Mat transport_density(n, nodes);
  for (int k = 0; k < nodes; ++k) {
    const double t = path.times[k];
    const Vec& x = ref_traj.states.col(k);
    if (path.eta[k] != 0.0)
      curvature_density.col(k) = path.eta[k] *
                                 (scenario.set.distance_hessian(t, x) *
                                  path.p.col(k));
    if (!hoist_jac) {
      const int interval = std::min(k / steps_per_interval, u.intervals() - 1);
      jx_t = scenario.dynamics.jac_x(x, u.values.col(interval)).transpose();
    }
    transport_density.col(k).noalias() = jx_t * path.p.col(k);
  }

  WeakEquationReport report;
  for (int coord = 0; coord < n; ++coord) {
    for (const Shape& shape : kShapes) {
      // Stieltjes term: -sum phi(midpoint) . dp over grid increments.
      double stieltjes = 0.0;
      for (int k = 0; k + 1 < nodes; ++k) {
        const double t_mid = 0.5 * (path.times[k] + path.times[k + 1]);
        stieltjes -= shape.value(t_mid, T) *
                     (path.p(coord, k + 1) - path.p(coord, k));
      }
      // Measure term: atoms evaluated at their centroids.
      double measure = 0.0;
      for (const MeasureAtom& atom : multipliers.atoms)
        measure += shape.value(atom.t_center, T) * atom.mass[coord];
      // Lebesgue terms, trapezoid rule.
      double curvature = 0.0;
      double transport = 0.0;
      double sup_phi = 0.0;
      for (int k = 0; k < nodes; ++k) {
        const double quad = (k == 0 || k == nodes - 1) ? 0.5 * h : h;
        const double phi = shape.value(path.times[k], T);
        sup_phi = std::max(sup_phi, std::abs(phi));
        curvature += quad * phi * curvature_density(coord, k);
        transport += quad * phi * transport_density(coord, k);
      }
      const double defect =
          std::abs(stieltjes + measure + curvature - transport) /
          std::max(sup_phi, 1e-300);
      report.terms.push_back({coord, shape.name, defect});
      report.max_defect = std::max(report.max_defect, defect);
    }
  }
  return report;
}

namespace {

int window_index(const Vec& edges, double t) {
  int lo = 0, hi = static_cast<int>(edges.size()) - 2;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (t >= edges[mid])
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

PMPReport verify_theorem(const Scenario& scenario, const Trajectory& ref_traj,
                         const ControlSignal& u, const LimitStudyReport& limit,
                         const BoundaryStructure& structure,
                         PointingMode pointing_mode) {
  const AdjointPath& path = limit.finest_path;
  if (ref_traj.nodes() != path.nodes())
    throw ValidationError(
        "verify_theorem requires the reference trajectory on the finest grid");
  const int nodes = path.nodes();
  const double T = scenario.horizon;
  const double w_end = scenario.numerics.endpoint_window_fraction * T;

  PMPReport report;
  report.thresholds = scenario.numerics.thresholds;
  report.pointing =
      check_pointing(scenario, ref_traj, u, structure, pointing_mode);

  // Transversality against the reference terminal state.
  report.transversality_residual =
      (path.terminal() + scenario.cost.gradient(ref_traj.terminal_state()))
          .norm();

  // Maximality along the grid, with tie disclosure.
  const int m = scenario.control_set.dim();
  report.maximality_selection_min =
      Vec::Constant(m, std::numeric_limits<double>::infinity());
  report.maximality_selection_max =
      Vec::Constant(m, -std::numeric_limits<double>::infinity());
  report.maximality_tie_counts.assign(m, 0);
  const int steps_per_interval = ref_traj.steps() / u.intervals();
  const bool hoist_jac = scenario.dynamics.constant_jacobians();
  Mat ju_t;
  if (hoist_jac)
    ju_t = scenario.dynamics.jac_u(ref_traj.states.col(0), u.values.col(0))
               .transpose();
  Vec coeff(m), maximizer(m);
  std::vector<int> tied;
  for (int k = 0; k < nodes; ++k) {
    const int interval = std::min(k / steps_per_interval, u.intervals() - 1);
    const Vec& uk = u.values.col(interval);
    if (!hoist_jac)
      ju_t = scenario.dynamics.jac_u(ref_traj.states.col(k), uk).transpose();
    coeff.noalias() = ju_t * path.p.col(k);
    tied.clear();
    argmax_linear_into(scenario.control_set, coeff, maximizer, &tied);
    report.maximality_residual = std::max(report.maximality_residual,
                                          coeff.dot(maximizer) - coeff.dot(uk));
    for (int i = 0; i < m; ++i) {
      report.maximality_selection_min[i] =
          std::min(report.maximality_selection_min[i], maximizer[i]);
      report.maximality_selection_max[i] =
          std::max(report.maximality_selection_max[i], maximizer[i]);
    }
    for (int i : tied) ++report.maximality_tie_counts[i];
  }

  // Normal component on the interior of the contact set.
  double sup = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = path.times[k];
    if (t < w_end || t > T - w_end) continue;
    bool interior_contact = false;
    for (const Interval& iv : structure.i_boundary)
      if (t >= iv.lo + w_end && t <= iv.hi - w_end) interior_contact = true;
    if (interior_contact) sup = std::max(sup, std::abs(path.p_normal[k]));
  }
  report.normal_component_sup = sup;

  // Weak adjoint equation on the reference trajectory.
  report.weak_details = verify_weak_equation(scenario, ref_traj, u, path,
                                             limit.finest_multipliers);
  report.weak_equation_residual = report.weak_details.max_defect;

  // Structure flags.
  const double ttol = report.thresholds.structure_time;
  if (report.pointing.verdict == PointingVerdict::M1 &&
      !report.pointing.vacuous) {
    report.structure.i_boundary_is_terminal_interval =
        structure.i_boundary.size() == 1 &&
        std::abs(structure.i_boundary.back().hi - T) <= ttol;
  }
  if (report.pointing.verdict == PointingVerdict::M2) {
    bool ok = true;
    for (const Interval& iv : structure.i_boundary)
      if (iv.hi > ttol) ok = false;
    report.structure.i_boundary_subset_zero = ok;
  }

  for (const JumpRecord& jump : limit.jump_table) {
    const Vec delta = jump.left - jump.right;
    if (delta.norm() == 0.0) continue;
    const Vec normal =
        scenario.set.boundary_normal(jump.time, ref_traj.state_at(jump.time));
    const Vec tangential = delta - normal * normal.dot(delta);
    if (tangential.norm() >
        report.thresholds.jump_alignment * delta.norm())
      report.structure.jumps_normal_only = false;
  }

  if (report.pointing.verdict == PointingVerdict::M1 && structure.t_bar) {
    const int w = window_index(limit.window_edges, *structure.t_bar);
    const double v_fine = limit.curves.back().window_variation[w];
    bool decreasing = true;
    for (std::size_t i = 1; i < limit.curves.size(); ++i)
      if (limit.curves[i].window_variation[w] >
          limit.curves[i - 1].window_variation[w] +
              report.thresholds.continuity_variation)
        decreasing = false;
    report.structure.continuous_at_tbar =
        decreasing && v_fine <= report.thresholds.continuity_variation;
  }

  // Atom mass outside both the contact set and the endpoint windows.
  double stray = 0.0;
  double total = 0.0;
  for (const MeasureAtom& atom : limit.finest_multipliers.atoms) {
    const double mass = atom.mass.norm();
    total += mass;
    if (atom.window_lo == 0.0 || atom.window_hi == T) continue;
    bool touches_contact = false;
    for (const Interval& iv : structure.i_boundary)
      if (atom.window_hi >= iv.lo && atom.window_lo <= iv.hi)
        touches_contact = true;
    if (!touches_contact) stray += mass;
  }
  report.stray_atom_mass_fraction = total > 0.0 ? stray / total : 0.0;

  const Thresholds& thr = report.thresholds;
  report.transversality_pass =
      report.transversality_residual <= thr.transversality;
  report.maximality_pass = report.maximality_residual <= thr.maximality;
  report.normal_component_pass =
      report.normal_component_sup <= thr.normal_component;
  report.weak_equation_pass =
      report.weak_equation_residual <= thr.weak_equation;
  report.pointing_pass =
      report.pointing.verdict != PointingVerdict::Neither;
  report.structure_pass = report.structure.i_boundary_is_terminal_interval &&
                          report.structure.i_boundary_subset_zero &&
                          report.structure.jumps_normal_only &&
                          report.structure.continuous_at_tbar;
  report.all_pass = report.transversality_pass && report.maximality_pass &&
                    report.normal_component_pass && report.weak_equation_pass &&
                    report.pointing_pass && report.structure_pass;
  return report;
}

}  // namespace sweep
