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

#include "oracles.hpp"
#include "sweep/adjoint.hpp"

using namespace sweep;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Scenario example1() { return oracles::load("example1.json"); }

ControlSignal reference(const Scenario& s) { return *s.reference_control; }

// Boundary-layer resolving refinement h = eps/256.
int fine_steps(const Scenario& s, double eps) {
  return steps_for(s.horizon, s.numerics.control_intervals, eps / 256.0);
}

}  // namespace

TEST_CASE("adjoint reproduces the closed form of the worked example") {
  const Scenario s = example1();
  const ControlSignal u = reference(s);
  const double eps = 1e-3;
  const Trajectory traj = integrate_regularized(s, u, eps, fine_steps(s, eps));
  const AdjointPath path = integrate_adjoint(s, traj, u, eps);

  // Terminal condition -p(T) = grad h(x(T)) holds exactly.
  CHECK((path.terminal() - v2(-1, -1)).norm() == 0.0);

  // p_x identically -1, p_y the decaying exponential of the layer.
  double sup_px = 0.0, sup_py = 0.0;
  for (int k = 0; k < path.nodes(); ++k) {
    sup_px = std::max(sup_px, std::abs(path.p(0, k) + 1.0));
    sup_py = std::max(
        sup_py,
        std::abs(path.p(1, k) + std::exp((path.times[k] - 1.0) / eps)));
  }
  CHECK(sup_px <= 1e-8);
  CHECK(sup_py <= 1e-3);
}

TEST_CASE("interior affine adjoint matches the matrix exponential oracle") {
  const Scenario s = oracles::load("affine_interior.json");
  const ControlSignal u = reference(s);
  const double eps = 1e-2;
  const int steps = steps_for(s.horizon, u.intervals(), 1e-5);
  const Trajectory traj = integrate_regularized(s, u, eps, steps);
  const AdjointPath path = integrate_adjoint(s, traj, u, eps);

  // -p' = A^T p backwards from p(T): p(t) = expm(A^T (T - t)) p(T).
  const Mat at = s.dynamics.A().transpose();
  const Vec pT = path.terminal();
  double sup = 0.0;
  for (int k = 0; k < path.nodes(); k += std::max(1, steps / 64)) {
    const Vec exact = oracles::expm(at * (s.horizon - path.times[k])) * pT;
    sup = std::max(sup, (path.p.col(k) - exact).norm());
  }
  CHECK(sup <= 1e-6);
  // Off the boundary the multiplier samples vanish.
  CHECK(path.xi.cwiseAbs().maxCoeff() == 0.0);
  CHECK(path.eta.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multiplier extraction localizes the terminal atom") {
  const Scenario s = example1();
  const ControlSignal u = reference(s);
  const double eps = 1e-3;
  const Trajectory traj = integrate_regularized(s, u, eps, fine_steps(s, eps));
  const AdjointPath path = integrate_adjoint(s, traj, u, eps);
  const MultiplierReport report =
      extract_multipliers(s, path, traj, eps, 100, 0.01);

  REQUIRE(report.atoms.size() == 102);
  // The terminal window carries mass close to (0, -1); all others are tiny.
  const MeasureAtom& last = report.atoms.back();
  CHECK(last.window_lo == doctest::Approx(0.99));
  CHECK((last.mass - v2(0, -1)).norm() <= 1e-2);
  CHECK(last.t_center > 1.0 - 3.0 * eps);
  for (std::size_t i = 0; i + 1 < report.atoms.size(); ++i)
    CHECK(report.atoms[i].mass.norm() <= 1e-3);

  // Total |xi| mass / eps close to one (the layer carries unit mass).
  CHECK(report.xi_mass_total == doctest::Approx(1.0).epsilon(0.02));

  // 0 <= eta <= beta + gamma at every node.
  CHECK(path.eta.minCoeff() >= 0.0);
  CHECK(path.eta.maxCoeff() <= s.f_bound + s.set.set_lipschitz() + 1e-9);

  // eta ~ |u_y| = 1 on the layer, zero before contact.
  CHECK(report.eta_max == doctest::Approx(1.0).epsilon(0.01));
  const int quarter = path.nodes() / 4;  // t = 0.25 < t_bar
  CHECK(path.eta[quarter] == 0.0);
  CHECK(path.eta[path.nodes() - 2] == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("interior run yields no atoms") {
  const Scenario s = oracles::load("affine_interior.json");
  const ControlSignal u = reference(s);
  const double eps = 1e-2;
  const Trajectory traj = integrate_regularized(s, u, eps, 2000);
  const AdjointPath path = integrate_adjoint(s, traj, u, eps);
  const MultiplierReport report =
      extract_multipliers(s, path, traj, eps, 100, 0.01);
  for (const MeasureAtom& atom : report.atoms) CHECK(atom.mass.norm() == 0.0);
  CHECK(report.xi_mass_total == 0.0);
}

TEST_CASE("uniform bounds across the epsilon schedule") {
  const Scenario s = example1();
  const ControlSignal u = reference(s);
  const double c = s.set.curvature_bound(s.horizon);
  const double gamma = s.set.set_lipschitz();
  const double linf_bound = std::sqrt(2.0) * std::exp(
      (c * (gamma + s.f_bound) + s.f_lipschitz) * s.horizon);

  std::vector<double> masses, variations, sups;
  for (double eps : {1e-2, 1e-3}) {
    const Trajectory traj =
        integrate_regularized(s, u, eps, fine_steps(s, eps));
    const AdjointPath path = integrate_adjoint(s, traj, u, eps);
    const MultiplierReport mult =
        extract_multipliers(s, path, traj, eps, 100, 0.01);
    masses.push_back(mult.xi_mass_total);
    double bv = 0.0;
    double sup = 0.0;
    for (int k = 0; k < path.nodes(); ++k) {
      if (k + 1 < path.nodes())
        bv += (path.p.col(k + 1) - path.p.col(k)).norm();
      sup = std::max(sup, path.p.col(k).norm());
    }
    variations.push_back(bv);
    sups.push_back(sup);
    CHECK(sup <= linf_bound + 1e-9);
  }
  // Mass and variation stay flat across the schedule.
  CHECK(std::abs(masses[0] - masses[1]) <= 0.05 * masses[0]);
  CHECK(std::abs(variations[0] - variations[1]) <= 0.05 * variations[0]);
}

TEST_CASE("limit study estimates the discontinuous limit adjoint") {
  const Scenario s = example1();
  const ControlSignal u = reference(s);
  const std::vector<double> schedule = {1e-2, 1e-3};
  std::vector<int> steps;
  for (double eps : schedule) steps.push_back(fine_steps(s, eps));
  const LimitStudyReport report = limit_study(s, u, schedule, steps);

  REQUIRE(report.curves.size() == 2);
  CHECK(report.curves[0].epsilon == 1e-2);

  // Limit estimate: p_y ~ 0 away from T, p_y(T) = -1.
  const LimitCurve& finest = report.curves.back();
  const int samples = static_cast<int>(finest.sample_times.size());
  for (int i = 0; i < samples; ++i) {
    if (finest.sample_times[i] <= 0.97)
      CHECK(std::abs(finest.p_samples(1, i)) <= 1e-3);
    CHECK(finest.p_samples(0, i) == doctest::Approx(-1.0));
  }
  CHECK(finest.p_samples(1, samples - 1) == doctest::Approx(-1.0));

  // The jump at T is flagged, in the terminal window, of unit size.
  REQUIRE(!report.jump_table.empty());
  const JumpRecord& jump = report.jump_table.back();
  CHECK(jump.time > 0.99);
  CHECK((jump.left - v2(-1, 0)).norm() <= 1e-2);
  CHECK((jump.right - v2(-1, -1)).norm() == 0.0);

  // p^N vanishes on the interior of the contact set.
  CHECK(report.p_normal_sup_interior <= 1e-3);
}

TEST_CASE("limit study on an interior scenario is epsilon independent") {
  const Scenario s = oracles::load("affine_interior.json");
  const ControlSignal u = reference(s);
  const std::vector<double> schedule = {1e-2, 1e-3};
  const std::vector<int> steps = {20000, 20000};
  const LimitStudyReport report = limit_study(s, u, schedule, steps);
  CHECK(report.jump_table.empty());
  // Curves coincide: the adjoint equation has no epsilon dependence inside.
  const Mat diff =
      report.curves[0].p_samples - report.curves[1].p_samples;
  CHECK(diff.cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(report.structure.i_boundary.empty());
}

TEST_CASE("adjoint input validation") {
  const Scenario s = example1();
  const ControlSignal u = reference(s);
  const Trajectory traj = integrate_regularized(s, u, 1e-2, 1000);
  CHECK_THROWS_AS(integrate_adjoint(s, traj, u, 1e-3), ValidationError);
  const std::vector<int> bad_steps = {1000};
  CHECK_THROWS_AS(limit_study(s, u, {1e-2, 1e-2}, {1000, 1000}),
                  ValidationError);
  CHECK_THROWS_AS(limit_study(s, u, {1e-2, 1e-3}, bad_steps), ValidationError);
}
