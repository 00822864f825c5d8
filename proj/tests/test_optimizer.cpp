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

#include <random>

#include "oracles.hpp"
#include "sweep/optimizer.hpp"

using namespace sweep;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

ControlSet example_box() {
  ControlSet U;
  U.lo = v2(-1, -1);
  U.hi = v2(1, -0.5);
  return U;
}

// Central finite difference of the discrete penalized cost along `direction`.
double fd_directional(const Scenario& s, const ControlSignal& u,
                      const ControlSignal& u_ref, const Mat& direction,
                      double eps, int steps, double fd_step) {
  auto cost_of = [&](double shift) {
    ControlSignal probe = u;
    probe.values += shift * direction;
    const Trajectory traj = integrate_regularized(s, probe, eps, steps);
    return penalized_cost(s, traj, probe, u_ref);
  };
  return (cost_of(fd_step) - cost_of(-fd_step)) / (2.0 * fd_step);
}

// Random admissible control strictly inside the box, and a direction.
ControlSignal random_control(const ControlSet& U, int intervals, double horizon,
                             std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.15, 0.85);
  ControlSignal u;
  u.horizon = horizon;
  u.values.resize(U.dim(), intervals);
  for (int k = 0; k < intervals; ++k)
    for (int i = 0; i < U.dim(); ++i)
      u.values(i, k) = U.lo[i] + unit(rng) * (U.hi[i] - U.lo[i]);
  return u;
}

Mat random_direction(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat d(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) d(r, c) = gauss(rng);
  return d / d.norm();
}

}  // namespace

TEST_CASE("box projection clamps coordinatewise") {
  const ControlSet U = example_box();
  CHECK((project_onto_U(U, v2(2, 0)) - v2(1, -0.5)).norm() == 0.0);
  CHECK((project_onto_U(U, v2(0.3, -0.7)) - v2(0.3, -0.7)).norm() == 0.0);
  CHECK((project_onto_U(U, v2(-3, -2)) - v2(-1, -1)).norm() == 0.0);
  // Idempotent and nonexpansive.
  std::mt19937 rng(7u);
  std::normal_distribution<double> gauss(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Vec a = v2(gauss(rng), gauss(rng));
    const Vec b = v2(gauss(rng), gauss(rng));
    const Vec pa = project_onto_U(U, a);
    CHECK((project_onto_U(U, pa) - pa).norm() == 0.0);
    CHECK((pa - project_onto_U(U, b)).norm() <= (a - b).norm() + 1e-15);
  }
}

TEST_CASE("linear argmax over the box") {
  const ControlSet U = example_box();
  SUBCASE("sign rule") {
    const ArgmaxResult r1 = argmax_linear(U, v2(-1, -1));
    CHECK((r1.maximizer - v2(-1, -1)).norm() == 0.0);
    CHECK(r1.tied_coordinates.empty());
    const ArgmaxResult r2 = argmax_linear(U, v2(1, 1));
    CHECK((r2.maximizer - v2(1, -0.5)).norm() == 0.0);
  }
  SUBCASE("tie is reported, not hidden") {
    const ArgmaxResult r = argmax_linear(U, v2(-1, 0));
    CHECK((r.maximizer - v2(-1, -1)).norm() == 0.0);
    REQUIRE(r.tied_coordinates.size() == 1);
    CHECK(r.tied_coordinates[0] == 1);
  }
  SUBCASE("objective dominates random points of U") {
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec c = v2(gauss(rng), gauss(rng));
      const ArgmaxResult best = argmax_linear(U, c);
      for (int i = 0; i < 100; ++i) {
        Vec u(2);
        for (int j = 0; j < 2; ++j) {
          const double w = unit(rng);
          u[j] = (1.0 - w) * U.lo[j] + w * U.hi[j];
        }
        CHECK(c.dot(best.maximizer) >= c.dot(u) - 1e-12);
      }
    }
  }
}

TEST_CASE("adjoint gradient matches finite differences") {
  std::mt19937 rng(20260303u);
  const double fd_step = 1e-5;

  SUBCASE("interior-only affine scenario") {
    const Scenario s = oracles::load("affine_interior.json");
    const double eps = 1e-2;
    const int steps = 1000;
    for (int trial = 0; trial < 20; ++trial) {
      const ControlSignal u = random_control(
          s.control_set, s.numerics.control_intervals, s.horizon, rng);
      const ControlSignal u_ref = random_control(
          s.control_set, s.numerics.control_intervals, s.horizon, rng);
      const Mat dir = random_direction(2, u.intervals(), rng);
      const Trajectory traj = integrate_regularized(s, u, eps, steps);
      const AdjointPath path = integrate_adjoint(s, traj, u, eps);
      const Mat grad = cost_gradient(s, traj, path, u, u_ref);
      const double predicted = (grad.array() * dir.array()).sum();
      const double observed =
          fd_directional(s, u, u_ref, dir, eps, steps, fd_step);
      CHECK(std::abs(predicted - observed) <=
            1e-4 * std::max(1.0, std::abs(observed)));
    }
  }

  SUBCASE("boundary-touching worked example") {
    const Scenario s = oracles::load("example1.json");
    const double eps = 1e-2;
    const int steps = 2000;
    for (int trial = 0; trial < 20; ++trial) {
      const ControlSignal u = random_control(
          s.control_set, s.numerics.control_intervals, s.horizon, rng);
      const ControlSignal u_ref = random_control(
          s.control_set, s.numerics.control_intervals, s.horizon, rng);
      const Mat dir = random_direction(2, u.intervals(), rng);
      const Trajectory traj = integrate_regularized(s, u, eps, steps);
      const AdjointPath path = integrate_adjoint(s, traj, u, eps);
      const Mat grad = cost_gradient(s, traj, path, u, u_ref);
      const double predicted = (grad.array() * dir.array()).sum();
      const double observed =
          fd_directional(s, u, u_ref, dir, eps, steps, fd_step);
      CHECK(std::abs(predicted - observed) <=
            1e-4 * std::max(1.0, std::abs(observed)));
    }
  }
}

TEST_CASE("gradient specialization for f = u on an interior run") {
  // g_k = -integral of p over the interval when u = u_ref and f = u.
  Scenario s = oracles::load("example1.json");
  s.x0 = v2(0.0, 3.0);  // interior for the whole horizon
  const ControlSignal u = *s.reference_control;
  const double eps = 1e-2;
  const int steps = 1000;
  const Trajectory traj = integrate_regularized(s, u, eps, steps);
  const AdjointPath path = integrate_adjoint(s, traj, u, eps);
  const Mat grad = cost_gradient(s, traj, path, u, u);
  // Interior, f = u: p constant = -grad h = (-1,-1); g_k = -int p = 0.1 each.
  for (int k = 0; k < u.intervals(); ++k) {
    CHECK(grad(0, k) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(grad(1, k) == doctest::Approx(0.1).epsilon(1e-10));
  }
}

TEST_CASE("penalty anchoring at the known optimum") {
  const Scenario s = oracles::load("example1.json");
  const ControlSignal u_ref = *s.reference_control;
  const double eps = 1e-2;
  SolveOptions opts;
  opts.steps = steps_for(s.horizon, u_ref.intervals(), eps / 4.0);
  const SolveReport report = solve_penalized(s, u_ref, eps, opts);
  CHECK(report.converged);
  CHECK(report.iterations <= 200);
  CHECK(report.u_opt.l2_distance(u_ref) <= 1e-2);
  CHECK(report.stationarity <= 1e-6);
  CHECK(report.pmp_residual <= 1e-6);
  // Terminal cost approaches the exact optimal value -1.
  CHECK(std::abs(s.cost.value(report.trajectory.terminal_state()) + 1.0) <=
        5.0 * eps);
  // Cost history never increases.
  for (std::size_t i = 1; i < report.cost_history.size(); ++i)
    CHECK(report.cost_history[i] <= report.cost_history[i - 1] + 1e-12);
}

TEST_CASE("unconstrained interior solve matches the direct LQ oracle") {
  const Scenario s = oracles::load("affine_interior.json");
  const int intervals = s.numerics.control_intervals;
  const double eps = 1e-2;
  const int steps = 1000;
  const ControlSignal u_ref =
      ControlSignal::constant(v2(0.2, -0.1), intervals, s.horizon);

  // Direct oracle: with affine dynamics and a linear terminal cost the
  // penalized objective is quadratic; its minimizer is
  // u_k = u_ref_k - G_k^T grad_h / dt with G_k the discrete input map.
  const int per_interval = steps / intervals;
  const double h = s.horizon / steps;
  const Mat step_map = Mat::Identity(2, 2) + h * s.dynamics.A();
  std::vector<Mat> suffix(steps + 1);  // product over later steps
  suffix[steps] = Mat::Identity(2, 2);
  for (int k = steps - 1; k >= 0; --k)
    suffix[k] = suffix[k + 1] * step_map;
  const Vec grad_h = s.cost.coeff;
  Mat u_expected(2, intervals);
  const double dt = s.horizon / intervals;
  for (int k = 0; k < intervals; ++k) {
    Vec g = Vec::Zero(2);
    for (int j = k * per_interval; j < (k + 1) * per_interval; ++j)
      g += h * suffix[j + 1].transpose() * grad_h;
    u_expected.col(k) = u_ref.values.col(k) - g / dt;
  }

  SolveOptions opts;
  opts.steps = steps;
  opts.tol = 1e-7;
  opts.max_iters = 500;
  const SolveReport report = solve_penalized(s, u_ref, eps, opts);
  CHECK(report.converged);
  CHECK((report.u_opt.values - u_expected).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("inactive constraint recovers the classical optimum") {
  // y0 >= 1: the state never reaches the boundary, so (-1,-1) is optimal
  // with cost (y0 - 1) - 1.
  Scenario s = oracles::load("example1.json");
  s.x0 = v2(0.0, 1.5);
  const ControlSignal u_ref = *s.reference_control;
  const double eps = 1e-2;
  SolveOptions opts;
  opts.steps = steps_for(s.horizon, u_ref.intervals(), eps / 4.0);
  const SolveReport report = solve_penalized(s, u_ref, eps, opts);
  CHECK(report.converged);
  CHECK(report.u_opt.l2_distance(u_ref) <= 1e-10);
  CHECK(s.cost.value(report.trajectory.terminal_state()) ==
        doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("continuation warm-starts along the schedule") {
  const Scenario s = oracles::load("example1.json");
  const ControlSignal u_ref = *s.reference_control;
  const std::vector<double> schedule = {1e-2, 1e-3, 1e-4};
  const ContinuationReport report = continuation(s, u_ref, schedule);
  REQUIRE(report.table.size() == 3);
  for (std::size_t i = 0; i < report.table.size(); ++i) {
    CHECK(report.table[i].converged);
    CHECK(report.table[i].u_distance <= 1e-2);
    // ||x_eps - x_catch|| = O(eps): the boundary layer depth.
    CHECK(report.table[i].x_sup_distance <= 3.0 * schedule[i]);
    if (i > 0)
      CHECK(report.table[i].u_distance <=
            report.table[i - 1].u_distance + 1e-12);
  }
  // Cost gap to the exact cost -1 shrinks like eps.
  const ContinuationRow& last = report.table.back();
  CHECK(std::abs(last.cost + 1.0) <= 5.0 * schedule.back());
}

TEST_CASE("single-entry schedule reduces to one solve") {
  const Scenario s = oracles::load("example1.json");
  const ControlSignal u_ref = *s.reference_control;
  const ContinuationReport cont = continuation(s, u_ref, {1e-2});
  SolveOptions opts;
  opts.steps = cont.solves[0].trajectory.steps();
  const SolveReport solo = solve_penalized(s, u_ref, 1e-2, opts);
  CHECK(cont.table.size() == 1);
  CHECK((cont.solves[0].u_opt.values - solo.u_opt.values).norm() == 0.0);
  CHECK(cont.table[0].cost == solo.cost_history.back());
}

TEST_CASE("solver rejects inadmissible anchors and bad schedules") {
  const Scenario s = oracles::load("example1.json");
  ControlSignal bad = *s.reference_control;
  bad.values.col(2) << 0.0, 0.0;  // u_y = 0 is outside U
  CHECK_THROWS_AS(solve_penalized(s, bad, 1e-2), ValidationError);
  CHECK_THROWS_AS(continuation(s, *s.reference_control, {1e-3, 1e-2}),
                  ValidationError);
  CHECK_THROWS_AS(continuation(s, *s.reference_control, {}), ValidationError);
}
