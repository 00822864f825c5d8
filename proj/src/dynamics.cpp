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

#include "sweep/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sweep/errors.hpp"

namespace sweep {

namespace {
constexpr int kBisectionIters = 60;
constexpr double kCrossingTimeTol = 1e-6;
constexpr double kMinBand = 1e-6;

void check_grid(const ControlSignal& u, int steps) {
  if (u.intervals() <= 0)
    throw ValidationError("control signal has no intervals");
  if (steps < u.intervals() || steps % u.intervals() != 0)
    throw ValidationError(
        "integrator steps must be a positive multiple of the control "
        "intervals (" +
        std::to_string(steps) + " vs " + std::to_string(u.intervals()) + ")");
}

struct GridSetup {
  double h;
  int steps_per_interval;
};

GridSetup make_grid(const Scenario& scenario, const ControlSignal& u,
                    int steps) {
  check_grid(u, steps);
  return {scenario.horizon / steps, steps / u.intervals()};
}

Trajectory allocate_trajectory(const Scenario& scenario,
                               const ControlSignal& u, int steps,
                               double epsilon, double band) {
  Trajectory traj;
  traj.epsilon = epsilon;
  traj.control_intervals = u.intervals();
  traj.boundary_band = band;
  traj.times = Vec::LinSpaced(steps + 1, 0.0, scenario.horizon);
  const int n = scenario.state_dim();
  traj.states.resize(n, steps + 1);
  traj.velocities.resize(n, steps + 1);
  traj.distances.resize(steps + 1);
  traj.signed_distances.resize(steps + 1);
  traj.step_signed_distances.resize(steps);
  traj.states.col(0) = scenario.x0;
  return traj;
}

void fill_samples(const Scenario& scenario, Trajectory& traj) {
  const int steps = traj.steps();
  const double h = traj.step_length();
  for (int k = 0; k <= steps; ++k) {
    const double ds =
        scenario.set.signed_distance(traj.times[k], traj.states.col(k));
    traj.signed_distances[k] = ds;
    traj.distances[k] = std::max(ds, 0.0);
  }
  for (int k = 0; k < steps; ++k)
    traj.velocities.col(k) = (traj.states.col(k + 1) - traj.states.col(k)) / h;
  traj.velocities.col(steps) = traj.velocities.col(steps - 1);
}

}  // namespace

Vec Trajectory::state_at(double t) const {
  const double h = step_length();
  const int k = std::min(std::max(static_cast<int>(std::floor(t / h)), 0),
                         steps() - 1);
  const double w = (t - times[k]) / h;
  return (1.0 - w) * states.col(k) + w * states.col(k + 1);
}

double Trajectory::sup_distance(const Trajectory& other) const {
  const Trajectory* coarse = this;
  const Trajectory* fine = &other;
  if (coarse->steps() > fine->steps()) std::swap(coarse, fine);
  if (fine->steps() % coarse->steps() != 0)
    throw ValidationError("trajectory grids do not nest");
  const int ratio = fine->steps() / coarse->steps();
  double sup = 0.0;
  for (int k = 0; k < coarse->nodes(); ++k) {
    const double diff =
        (coarse->states.col(k) - fine->states.col(k * ratio)).norm();
    sup = std::max(sup, diff);
  }
  return sup;
}

int steps_for(double horizon, int control_intervals, double target_step) {
  const int per_interval = std::max(
      1, static_cast<int>(std::ceil(horizon / (control_intervals * target_step))));
  return per_interval * control_intervals;
}

Trajectory integrate_regularized(const Scenario& scenario,
                                 const ControlSignal& u, double epsilon,
                                 int steps) {
  if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
  const double beta = scenario.f_bound;
  const double gamma = scenario.set.set_lipschitz();
  if (epsilon * (beta + gamma) >= scenario.set.prox_radius() / 2.0)
    throw ValidationError(
        "epsilon out of validity band: epsilon (beta+gamma) must be below "
        "rho/2");
  const auto grid = make_grid(scenario, u, steps);
  const double h = grid.h;
  const double a = 1.0 / (1.0 + h / epsilon);

  Trajectory traj = allocate_trajectory(
      scenario, u, steps, epsilon,
      std::max(2.0 * epsilon * (beta + gamma), kMinBand));
  Vec x = scenario.x0;
  for (int k = 0; k < steps; ++k) {
    const double t_next = traj.times[k + 1];
    const Vec& uk = u.values.col(k / grid.steps_per_interval);
    const Vec z = forward_stage(scenario, x, uk, h);
    const double sd = scenario.set.signed_distance(t_next, z);
    traj.step_signed_distances[k] = sd;
    if (sd > 0.0) {
      x = a * z + (1.0 - a) * scenario.set.project(t_next, z);
    } else {
      x = z;
    }
    traj.states.col(k + 1) = x;
  }
  fill_samples(scenario, traj);
  return traj;
}

Trajectory integrate_catching_up(const Scenario& scenario,
                                 const ControlSignal& u, int steps) {
  const double beta = scenario.f_bound;
  const double gamma = scenario.set.set_lipschitz();
  const auto grid = make_grid(scenario, u, steps);
  const double h = grid.h;
  if (h * (beta + gamma) >= scenario.set.prox_radius() / 2.0)
    throw ValidationError(
        "step out of validity band: h (beta+gamma) must be below rho/2");

  Trajectory traj = allocate_trajectory(scenario, u, steps, 0.0, kMinBand);
  Vec x = scenario.x0;
  for (int k = 0; k < steps; ++k) {
    const double t_next = traj.times[k + 1];
    const Vec& uk = u.values.col(k / grid.steps_per_interval);
    const Vec z = forward_stage(scenario, x, uk, h);
    traj.step_signed_distances[k] = scenario.set.signed_distance(t_next, z);
    x = scenario.set.project(t_next, z);
    traj.states.col(k + 1) = x;
  }
  fill_samples(scenario, traj);
  return traj;
}

namespace {

// Bisection for d_S(t, x(t)) = level on [t_lo, t_hi], assuming opposite signs
// of (d_S - level) at the ends.
double bisect_signed_distance(const Scenario& scenario, const Trajectory& traj,
                              double t_lo, double t_hi, double level) {
  auto value = [&](double t) {
    return scenario.set.signed_distance(t, traj.state_at(t)) - level;
  };
  double f_lo = value(t_lo);
  for (int it = 0; it < kBisectionIters; ++it) {
    if (t_hi - t_lo <= kCrossingTimeTol) break;
    const double t_mid = 0.5 * (t_lo + t_hi);
    const double f_mid = value(t_mid);
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      t_lo = t_mid;
      f_lo = f_mid;
    } else {
      t_hi = t_mid;
    }
  }
  return 0.5 * (t_lo + t_hi);
}

}  // namespace

BoundaryStructure detect_crossings(const Scenario& scenario,
                                   const Trajectory& traj) {
  BoundaryStructure bs;
  bs.band = traj.boundary_band;
  const int nodes = traj.nodes();
  const double tol = traj.boundary_band;

  // Strict sign changes of d_S between consecutive nodes.
  for (int k = 0; k + 1 < nodes; ++k) {
    const double d0 = traj.signed_distances[k];
    const double d1 = traj.signed_distances[k + 1];
    if (d0 * d1 < 0.0) {
      bs.crossing_times.push_back(bisect_signed_distance(
          scenario, traj, traj.times[k], traj.times[k + 1], 0.0));
    }
  }

  // Maximal runs of nodes with |d_S| <= band; left/right ends refined by
  // bisection against the band level on the adjoining step.
  std::vector<Interval> raw;
  int k = 0;
  while (k < nodes) {
    if (std::abs(traj.signed_distances[k]) > tol) {
      ++k;
      continue;
    }
    int j = k;
    while (j + 1 < nodes && std::abs(traj.signed_distances[j + 1]) <= tol) ++j;
    double lo = traj.times[k];
    double hi = traj.times[j];
    if (k > 0) {
      const double level = traj.signed_distances[k - 1] < 0.0 ? -tol : tol;
      lo = bisect_signed_distance(scenario, traj, traj.times[k - 1],
                                  traj.times[k], level);
    }
    if (j + 1 < nodes) {
      const double level = traj.signed_distances[j + 1] < 0.0 ? -tol : tol;
      hi = bisect_signed_distance(scenario, traj, traj.times[j],
                                  traj.times[j + 1], level);
    }
    raw.push_back({lo, hi});
    k = j + 1;
  }

  // Merge runs separated by less than two steps of slack.
  const double merge_gap = std::max(2.0 * traj.step_length(), 1e-9);
  for (const Interval& iv : raw) {
    if (!bs.i_boundary.empty() && iv.lo - bs.i_boundary.back().hi <= merge_gap)
      bs.i_boundary.back().hi = iv.hi;
    else
      bs.i_boundary.push_back(iv);
  }

  // Complement inside [0, T].
  double cursor = 0.0;
  const double T = traj.times[nodes - 1];
  for (const Interval& iv : bs.i_boundary) {
    if (iv.lo > cursor) bs.i_interior.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < T) bs.i_interior.push_back({cursor, T});

  if (!bs.i_boundary.empty()) bs.t_bar = bs.i_boundary.front().lo;
  return bs;
}

PenetrationReport penetration_report(const Trajectory& traj, double epsilon,
                                     double beta, double gamma) {
  PenetrationReport report;
  report.bound = epsilon * (beta + gamma);
  const double h = traj.step_length();
  report.tolerance = 1.0 + 10.0 * h / epsilon;
  for (int k = 0; k < traj.nodes(); ++k) {
    const double d = traj.distances[k];
    report.max_distance = std::max(report.max_distance, d);
    const double denom =
        report.bound * (1.0 - std::exp(-traj.times[k] / epsilon));
    double ratio = 0.0;
    if (denom > 0.0)
      ratio = d / denom;
    else if (d > 0.0)
      ratio = std::numeric_limits<double>::infinity();
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.pass = report.max_ratio <= report.tolerance;
  return report;
}

}  // namespace sweep
