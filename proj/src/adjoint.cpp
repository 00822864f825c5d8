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

#include "sweep/adjoint.hpp"

#include <algorithm>
#include <cmath>

#include "sweep/errors.hpp"

namespace sweep {

AdjointPath integrate_adjoint(const Scenario& scenario, const Trajectory& traj,
                              const ControlSignal& u, double epsilon) {
  if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
  if (traj.epsilon != epsilon)
    throw ValidationError("trajectory was integrated at a different epsilon");
  if (traj.control_intervals != u.intervals())
    throw ValidationError("trajectory and control grids do not match");
  const int steps = traj.steps();
  const int n = scenario.state_dim();
  const double h = traj.step_length();
  const double a = 1.0 / (1.0 + h / epsilon);
  const int steps_per_interval = steps / u.intervals();

  AdjointPath path;
  path.epsilon = epsilon;
  path.times = traj.times;
  path.p.resize(n, steps + 1);
  path.xi.resize(steps + 1);
  path.eta.resize(steps + 1);
  path.p_normal.resize(steps + 1);

  const bool hoist_jac = scenario.dynamics.constant_jacobians();
  Mat jx_t;
  bool jx_zero = false;
  if (hoist_jac) {
    jx_t = scenario.dynamics.jac_x(scenario.x0, u.values.col(0)).transpose();
    jx_zero = jx_t.isZero(0.0);
  }

  Vec p = -scenario.cost.gradient(traj.terminal_state());
  path.p.col(steps) = p;
  for (int k = steps - 1; k >= 0; --k) {
    const double t_next = traj.times[k + 1];
    const Vec& xk = traj.states.col(k);
    const Vec& uk = u.values.col(k / steps_per_interval);
    Vec w = p;
    const double sd = traj.step_signed_distances[k];
    if (sd > 0.0) {
      const Vec z = forward_stage(scenario, xk, uk, h);
      const Vec grad = scenario.set.distance_gradient(t_next, z);
      const Mat hess = scenario.set.distance_hessian(t_next, z);
      w -= (1.0 - a) * (sd * (hess * p) + grad * grad.dot(p));
    }
    if (hoist_jac) {
      p = jx_zero ? std::move(w) : Vec(w + h * (jx_t * w));
    } else {
      p = w + h * scenario.dynamics.jac_x(xk, uk).transpose() * w;
    }
    path.p.col(k) = p;
  }

  const double band = traj.boundary_band;
  for (int k = 0; k <= steps; ++k) {
    const double t = traj.times[k];
    const Vec& x = traj.states.col(k);
    const double ds = traj.signed_distances[k];
    path.eta[k] = traj.distances[k] / epsilon;
    path.xi[k] = scenario.set.distance_gradient(t, x).dot(path.p.col(k));
    path.p_normal[k] =
        ds > -band ? scenario.set.boundary_normal(t, x).dot(path.p.col(k))
                   : 0.0;
  }
  return path;
}

namespace {

Vec window_edges_for(double horizon, int windows, double endpoint_fraction) {
  const double w = endpoint_fraction * horizon;
  Vec edges(windows + 3);
  edges[0] = 0.0;
  edges[1] = w;
  for (int i = 1; i < windows; ++i)
    edges[1 + i] = w + (horizon - 2.0 * w) * i / windows;
  edges[windows + 1] = horizon - w;
  edges[windows + 2] = horizon;
  return edges;
}

int window_of(const Vec& edges, double t) {
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

MultiplierReport extract_multipliers(const Scenario& scenario,
                                     const AdjointPath& path,
                                     const Trajectory& traj, double epsilon,
                                     int windows, double endpoint_fraction) {
  if (path.nodes() != traj.nodes())
    throw ValidationError("adjoint path and trajectory grids do not match");
  if (path.epsilon != epsilon || traj.epsilon != epsilon)
    throw ValidationError("multiplier extraction inputs disagree on epsilon");
  const int nodes = path.nodes();
  const int n = static_cast<int>(path.p.rows());
  const double h = traj.step_length();
  const double horizon = traj.times[nodes - 1];

  MultiplierReport report;
  report.eta_profile = path.eta;
  report.eta_max = path.eta.maxCoeff();

  const Vec edges = window_edges_for(horizon, windows, endpoint_fraction);
  const int wcount = static_cast<int>(edges.size()) - 1;
  std::vector<Vec> masses(wcount, Vec::Zero(n));
  std::vector<double> weights(wcount, 0.0);
  std::vector<double> centroids(wcount, 0.0);

  for (int k = 0; k < nodes; ++k) {
    const double xi = path.xi[k];
    if (xi == 0.0) continue;
    const double t = traj.times[k];
    const double quad = (k == 0 || k == nodes - 1) ? 0.5 * h : h;
    report.xi_mass_total += quad * std::abs(xi) / epsilon;
    const Vec grad = scenario.set.distance_gradient(t, traj.states.col(k));
    const int w = window_of(edges, t);
    const Vec contribution = (quad * xi / epsilon) * grad;
    masses[w] += contribution;
    const double weight = contribution.norm();
    weights[w] += weight;
    centroids[w] += weight * t;
  }

  report.atoms.reserve(wcount);
  for (int w = 0; w < wcount; ++w) {
    MeasureAtom atom;
    atom.window_lo = edges[w];
    atom.window_hi = edges[w + 1];
    atom.t_center = weights[w] > 0.0 ? centroids[w] / weights[w]
                                     : 0.5 * (edges[w] + edges[w + 1]);
    atom.mass = masses[w];
    report.atoms.push_back(std::move(atom));
  }
  return report;
}

namespace {

Vec variation_per_window(const AdjointPath& path, const Vec& edges) {
  Vec var = Vec::Zero(edges.size() - 1);
  for (int k = 0; k + 1 < path.nodes(); ++k) {
    const double t_mid = 0.5 * (path.times[k] + path.times[k + 1]);
    var[window_of(edges, t_mid)] += (path.p.col(k + 1) - path.p.col(k)).norm();
  }
  return var;
}

LimitCurve downsample(const AdjointPath& path, const Vec& edges,
                      int samples) {
  LimitCurve curve;
  curve.epsilon = path.epsilon;
  const int nodes = path.nodes();
  const double T = path.times[nodes - 1];
  curve.sample_times = Vec::LinSpaced(samples, 0.0, T);
  curve.p_samples.resize(path.p.rows(), samples);
  for (int s = 0; s < samples; ++s) {
    const int k = std::min<int>(
        static_cast<int>(std::round(curve.sample_times[s] / T * (nodes - 1))),
        nodes - 1);
    curve.p_samples.col(s) = path.p.col(k);
  }
  curve.window_variation = variation_per_window(path, edges);
  curve.bv_total = curve.window_variation.sum();
  curve.sup_norm = path.p.colwise().norm().maxCoeff();
  return curve;
}

}  // namespace

LimitStudyReport limit_study(const Scenario& scenario, const ControlSignal& u,
                             const std::vector<double>& eps_schedule,
                             const std::vector<int>& steps_per_epsilon) {
  if (eps_schedule.empty()) throw ValidationError("empty epsilon schedule");
  if (steps_per_epsilon.size() != eps_schedule.size())
    throw ValidationError("schedule and step counts differ in length");
  for (std::size_t i = 1; i < eps_schedule.size(); ++i)
    if (eps_schedule[i] >= eps_schedule[i - 1])
      throw ValidationError("epsilon schedule must be strictly decreasing");

  LimitStudyReport report;
  report.schedule = eps_schedule;
  const int windows = scenario.numerics.measure_windows;
  const double frac = scenario.numerics.endpoint_window_fraction;
  report.window_edges = window_edges_for(scenario.horizon, windows, frac);

  constexpr int kCurveSamples = 1001;
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    const double eps = eps_schedule[i];
    Trajectory traj =
        integrate_regularized(scenario, u, eps, steps_per_epsilon[i]);
    AdjointPath path = integrate_adjoint(scenario, traj, u, eps);
    LimitCurve curve = downsample(path, report.window_edges, kCurveSamples);
    MultiplierReport mult =
        extract_multipliers(scenario, path, traj, eps, windows, frac);
    curve.xi_mass_total = mult.xi_mass_total;
    report.curves.push_back(std::move(curve));
    if (i + 1 == eps_schedule.size()) {
      report.finest_multipliers = std::move(mult);
      report.finest_path = std::move(path);
      report.finest_trajectory = std::move(traj);
    }
  }

  report.structure = detect_crossings(scenario, report.finest_trajectory);

  // Jump candidates: windows whose |p| variation persists across the
  // schedule instead of vanishing with epsilon.
  const LimitCurve& finest = report.curves.back();
  const LimitCurve& coarsest = report.curves.front();
  const double jump_scale =
      std::max(1.0, finest.sup_norm);
  for (int w = 0; w < finest.window_variation.size(); ++w) {
    const double v_fine = finest.window_variation[w];
    if (v_fine < 0.05 * jump_scale) continue;
    if (report.curves.size() > 1 &&
        v_fine < 0.5 * coarsest.window_variation[w])
      continue;
    // Locate the largest single increment of the finest path in this window.
    const AdjointPath& path = report.finest_path;
    double best = -1.0;
    int best_k = -1;
    for (int k = 0; k + 1 < path.nodes(); ++k) {
      const double t_mid = 0.5 * (path.times[k] + path.times[k + 1]);
      if (t_mid < report.window_edges[w] || t_mid > report.window_edges[w + 1])
        continue;
      const double inc = (path.p.col(k + 1) - path.p.col(k)).norm();
      if (inc > best) {
        best = inc;
        best_k = k;
      }
    }
    if (best_k < 0) continue;
    JumpRecord jump;
    jump.time = path.times[best_k + 1];
    jump.variation = v_fine;
    // Window-edge values stand in for the one-sided limits.
    int k_lo = 0, k_hi = path.nodes() - 1;
    for (int k = 0; k < path.nodes(); ++k) {
      if (path.times[k] <= report.window_edges[w]) k_lo = k;
      if (path.times[k] >= report.window_edges[w + 1]) {
        k_hi = k;
        break;
      }
    }
    jump.left = path.p.col(k_lo);
    jump.right = path.p.col(k_hi);
    report.jump_table.push_back(std::move(jump));
  }

  // Sup of |p^N| over the interior of the contact set, excluding the
  // endpoint windows.
  const AdjointPath& path = report.finest_path;
  const double w_end = frac * scenario.horizon;
  double sup = 0.0;
  for (int k = 0; k < path.nodes(); ++k) {
    const double t = path.times[k];
    if (t < w_end || t > scenario.horizon - w_end) continue;
    bool in_contact = false;
    for (const Interval& iv : report.structure.i_boundary)
      if (t >= iv.lo + w_end && t <= iv.hi - w_end) in_contact = true;
    if (in_contact) sup = std::max(sup, std::abs(path.p_normal[k]));
  }
  report.p_normal_sup_interior = sup;
  return report;
}

}  // namespace sweep
