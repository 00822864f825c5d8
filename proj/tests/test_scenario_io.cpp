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
#include "sweep/scenario_io.hpp"

using namespace sweep;

TEST_CASE("bundled example scenario parses to the expected model") {
  const Scenario s = oracles::load("example1.json");
  CHECK(s.set.kind() == SetKind::Halfspace);
  CHECK(s.horizon == 1.0);
  CHECK(s.state_dim() == 2);
  CHECK(s.x0[1] == 0.5);
  CHECK(s.control_set.lo[0] == -1.0);
  CHECK(s.control_set.hi[1] == -0.5);
  CHECK(s.f_bound == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.pointing_margin == 0.5);
  CHECK(s.cost.kind == CostModel::Kind::Linear);
  REQUIRE(s.reference_control.has_value());
  CHECK(s.reference_control->intervals() == 10);
  CHECK(s.reference_control->values(1, 3) == -1.0);
  CHECK(s.numerics.eps_schedule.size() == 3);
}

TEST_CASE("infeasible initial state is rejected") {
  Scenario s = oracles::load("example1.json");
  std::string text = emit_scenario(s);
  const auto pos = text.find("\"x0\"");
  REQUIRE(pos != std::string::npos);
  text.replace(text.find("0.5", pos), 3, "-1.0");
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       doctest::Contains("infeasible x0"), ValidationError);
}

TEST_CASE("schema violations carry field paths") {
  const Scenario s = oracles::load("example1.json");
  const std::string text = emit_scenario(s);

  SUBCASE("unknown field") {
    std::string bad = text;
    bad.insert(bad.find("\"horizon\""), "\"extra_field\": 1,\n  ");
    CHECK_THROWS_WITH_AS(parse_scenario(bad),
                         doctest::Contains("extra_field"), ValidationError);
  }
  SUBCASE("lo > hi") {
    std::string bad = text;
    const auto pos = bad.find("\"lo\"");
    bad.replace(bad.find("-1.0", pos), 4, "2.0");
    CHECK_THROWS_WITH_AS(parse_scenario(bad), doctest::Contains("lo > hi"),
                         ValidationError);
  }
  SUBCASE("not json") {
    CHECK_THROWS_WITH_AS(parse_scenario("{ nope"),
                         doctest::Contains("not valid JSON"), ValidationError);
  }
  SUBCASE("missing required field") {
    std::string bad = text;
    const auto pos = bad.find("\"beta\"");
    bad.replace(pos, 6, "\"beta_\"");
    CHECK_THROWS_AS(parse_scenario(bad), ValidationError);
  }
}

TEST_CASE("inconsistent beta is rejected") {
  Scenario s = oracles::load("example1.json");
  std::string text = emit_scenario(s);
  const auto pos = text.find("\"beta\"");
  text.replace(text.find("1.4142135623730951", pos), 18, "1.0");
  CHECK_THROWS_WITH_AS(parse_scenario(text),
                       doctest::Contains("inconsistent beta"),
                       ValidationError);
}

TEST_CASE("scenario round trip is stable") {
  for (const char* name :
       {"example1.json", "affine_interior.json", "m2_inward.json"}) {
    const Scenario s = oracles::load(name);
    const std::string emitted = emit_scenario(s);
    const Scenario reparsed = parse_scenario(emitted);
    CHECK(emit_scenario(reparsed) == emitted);
  }
}

TEST_CASE("affine scenario parses") {
  const Scenario s = oracles::load("affine_interior.json");
  CHECK(s.dynamics.kind() == DynamicsModel::Kind::Affine);
  CHECK(s.dynamics.A()(0, 1) == 0.3);
  const Vec x = s.x0;
  Vec u(2);
  u << 0.5, 0.25;
  CHECK((s.dynamics.eval(x, u) - (s.dynamics.A() * x + u)).norm() < 1e-15);
}

TEST_CASE("custom dynamics registry") {
  CHECK_FALSE(dynamics_registered("spin"));
  CustomDynamics spin;
  spin.state_dim = 2;
  spin.control_dim = 2;
  Mat rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  spin.f = [rot](const Vec& x, const Vec& u) -> Vec { return rot * x + u; };
  spin.jac_x = [rot](const Vec&, const Vec&) -> Mat { return rot; };
  spin.jac_u = [](const Vec&, const Vec&) -> Mat {
    return Mat::Identity(2, 2);
  };
  register_dynamics("spin", spin);
  CHECK(dynamics_registered("spin"));
  const DynamicsModel model = DynamicsModel::custom("spin");
  Vec x(2), u(2);
  x << 1.0, 2.0;
  u << 0.5, 0.0;
  CHECK((model.eval(x, u) - (rot * x + u)).norm() == 0.0);
  CHECK_THROWS_AS(DynamicsModel::custom("missing"), ValidationError);
}

TEST_CASE("control signal helpers") {
  const Scenario s = oracles::load("example1.json");
  const ControlSignal& u = *s.reference_control;
  CHECK(u.interval_of(0.0) == 0);
  CHECK(u.interval_of(0.95) == 9);
  CHECK(u.interval_of(1.0) == 9);
  ControlSignal shifted = u;
  shifted.values.col(3) << 0.5, -0.75;
  CHECK(u.l2_distance(shifted) ==
        doctest::Approx(std::sqrt(0.1 * (1.5 * 1.5 + 0.25 * 0.25))));
  ControlSignal bad = u;
  bad.values.col(0) << 2.0, 0.0;
  CHECK_THROWS_AS(bad.validate(s.control_set), ValidationError);
}
