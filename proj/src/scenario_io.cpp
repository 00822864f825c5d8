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

#include "sweep/scenario_io.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sweep/errors.hpp"

namespace sweep {

namespace {

using nlohmann::json;

constexpr double kConvexProxSentinel = 1e6;

/// Strict object reader: every key must be consumed, errors carry the path.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }
  ~Obj() = default;

  [[noreturn]] void fail(const std::string& reason) const {
    throw ValidationError(path_.empty() ? reason : path_ + ": " + reason);
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) {
    if (!j_.contains(key)) fail("missing field '" + key + "'");
    used_.insert(key);
    return j_.at(key);
  }

  const json* find(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    used_.insert(key);
    return &j_.at(key);
  }

  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail("field '" + key + "' must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail("field '" + key + "' must be a number");
    return v->get<double>();
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail("field '" + key + "' must be an integer");
    return v->get<int>();
  }

  int required_integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) fail("field '" + key + "' must be an integer");
    return v.get<int>();
  }

  std::string text(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail("field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  Vec vector(const std::string& key) {
    const json& v = at(key);
    return to_vector(v, child_path(key));
  }

  static Vec to_vector(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty())
      throw ValidationError(path + ": expected a nonempty numeric array");
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number())
        throw ValidationError(path + "[" + std::to_string(i) +
                              "]: expected a number");
      out[static_cast<int>(i)] = v[i].get<double>();
    }
    return out;
  }

  static Mat to_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty())
      throw ValidationError(path + ": expected a nonempty array of rows");
    const Vec first = to_vector(v[0], path + "[0]");
    Mat out(v.size(), first.size());
    out.row(0) = first.transpose();
    for (std::size_t r = 1; r < v.size(); ++r) {
      const Vec row = to_vector(v[r], path + "[" + std::to_string(r) + "]");
      if (row.size() != first.size())
        throw ValidationError(path + ": ragged rows");
      out.row(static_cast<int>(r)) = row.transpose();
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key()))
        throw ValidationError((path_.empty() ? it.key() : path_ + "." + it.key()) +
                              ": unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

LinearMotion parse_scalar_motion(Obj& parent, const std::string& key,
                                 double value0) {
  LinearMotion motion{value0, 0.0};
  if (const json* m = parent.find(key)) {
    Obj o(*m, parent.child_path(key));
    const std::string type = o.text("type");
    if (type != "linear") o.fail("unsupported motion type '" + type + "'");
    motion.rate = o.number("rate");
    o.finish();
  }
  return motion;
}

LinearVectorMotion parse_center(Obj& parent, const Vec& value0) {
  LinearVectorMotion motion{value0, Vec::Zero(value0.size())};
  if (const json* m = parent.find("center_motion")) {
    Obj o(*m, parent.child_path("center_motion"));
    const std::string type = o.text("type");
    if (type != "linear") o.fail("unsupported motion type '" + type + "'");
    motion.velocity = o.vector("velocity");
    if (motion.velocity.size() != value0.size())
      o.fail("velocity dimension does not match center");
    o.finish();
  }
  return motion;
}

MovingSetModel parse_set(const json& j, double rho_constant, double gamma,
                         double horizon) {
  Obj o(j, "set");
  const std::string kind = o.text("kind");
  MovingSetModel result = [&] {
    if (kind == "halfspace") {
      const Vec normal = o.vector("normal");
      const double offset = o.number("offset");
      const LinearMotion motion = parse_scalar_motion(o, "offset_motion", offset);
      const double rho = rho_constant > 0.0 ? rho_constant : kConvexProxSentinel;
      return MovingSetModel::halfspace(normal, motion, rho, gamma);
    }
    if (kind == "ball" || kind == "ball_complement") {
      const Vec center = o.vector("center");
      const double radius = o.number("radius");
      const LinearMotion rmotion = parse_scalar_motion(o, "radius_motion", radius);
      const LinearVectorMotion cmotion = parse_center(o, center);
      const double rmin = std::min(rmotion.at(0.0), rmotion.at(horizon));
      if (rmin <= 0.0) o.fail("radius becomes nonpositive on the horizon");
      if (kind == "ball") {
        const double rho = rho_constant > 0.0 ? rho_constant : kConvexProxSentinel;
        return MovingSetModel::ball(cmotion, rmotion, rho, gamma);
      }
      double rho = rho_constant > 0.0 ? rho_constant : rmin;
      if (rho > rmin)
        o.fail("rho exceeds the prox-regularity radius of the ball complement");
      return MovingSetModel::ball_complement(cmotion, rmotion, rho, gamma);
    }
    if (kind == "sublevel") {
      const Vec semi_axes = o.vector("semi_axes");
      const Vec center = o.vector("center");
      const LinearVectorMotion cmotion = parse_center(o, center);
      const double rho = rho_constant > 0.0 ? rho_constant : kConvexProxSentinel;
      return MovingSetModel::sublevel_ellipsoid(semi_axes, cmotion, rho, gamma);
    }
    o.fail("unknown set kind '" + kind + "'");
  }();
  o.finish();
  return result;
}

DynamicsModel parse_dynamics(const json& j) {
  Obj o(j, "dynamics");
  const std::string kind = o.text("kind");
  DynamicsModel result = [&] {
    if (kind == "control_direct")
      return DynamicsModel::control_direct(o.required_integer("dimension"));
    if (kind == "affine") {
      const Mat A = Obj::to_matrix(o.at("A"), "dynamics.A");
      const Mat B = Obj::to_matrix(o.at("B"), "dynamics.B");
      const Vec c = o.vector("c");
      return DynamicsModel::affine(A, B, c);
    }
    if (kind == "custom") return DynamicsModel::custom(o.text("name"));
    o.fail("unknown dynamics kind '" + kind + "'");
  }();
  o.finish();
  return result;
}

CostModel parse_cost(const json& j) {
  Obj o(j, "cost");
  const std::string kind = o.text("kind");
  CostModel cost;
  if (kind == "linear") {
    cost.kind = CostModel::Kind::Linear;
    cost.coeff = o.vector("coefficients");
  } else if (kind == "quadratic") {
    cost.kind = CostModel::Kind::Quadratic;
    cost.coeff = o.vector("x_ref");
  } else {
    o.fail("unknown cost kind '" + kind + "'");
  }
  o.finish();
  return cost;
}

ControlSignal parse_control(const json& j, int intervals, double horizon) {
  Obj o(j, "control");
  ControlSignal signal;
  if (const json* c = o.find("constant")) {
    const Vec u = Obj::to_vector(*c, "control.constant");
    signal = ControlSignal::constant(u, intervals, horizon);
  } else if (const json* v = o.find("values")) {
    const Mat values = Obj::to_matrix(*v, "control.values");
    if (values.rows() != intervals)
      o.fail("control.values must have one row per control interval (" +
             std::to_string(intervals) + ")");
    signal.horizon = horizon;
    signal.values = values.transpose();
  } else {
    o.fail("control needs either 'constant' or 'values'");
  }
  o.finish();
  return signal;
}

Thresholds parse_thresholds(Obj& parent) {
  Thresholds t;
  if (const json* j = parent.find("thresholds")) {
    Obj o(*j, parent.child_path("thresholds"));
    t.transversality = o.number_or("transversality", t.transversality);
    t.maximality = o.number_or("maximality", t.maximality);
    t.normal_component = o.number_or("normal_component", t.normal_component);
    t.weak_equation = o.number_or("weak_equation", t.weak_equation);
    t.continuity_variation =
        o.number_or("continuity_variation", t.continuity_variation);
    t.jump_alignment = o.number_or("jump_alignment", t.jump_alignment);
    t.structure_time = o.number_or("structure_time", t.structure_time);
    o.finish();
  }
  return t;
}

Numerics parse_numerics(const json& j) {
  Obj o(j, "numerics");
  Numerics n;
  if (const json* eps = o.find("epsilon")) {
    if (!eps->is_number() || eps->get<double>() <= 0.0)
      o.fail("epsilon must be a positive number");
    n.epsilon = eps->get<double>();
  }
  if (const json* sched = o.find("eps_schedule")) {
    const Vec s = Obj::to_vector(*sched, "numerics.eps_schedule");
    for (int i = 0; i < s.size(); ++i) {
      if (s[i] <= 0.0) o.fail("eps_schedule entries must be positive");
      if (i > 0 && s[i] >= s[i - 1])
        o.fail("eps_schedule must be strictly decreasing");
      n.eps_schedule.push_back(s[i]);
    }
  }
  n.control_intervals = o.integer("control_intervals", n.control_intervals);
  n.steps_per_interval = o.integer("steps_per_interval", n.steps_per_interval);
  n.measure_windows = o.integer("measure_windows", n.measure_windows);
  n.endpoint_window_fraction =
      o.number_or("endpoint_window_fraction", n.endpoint_window_fraction);
  if (const json* mode = o.find("pointing_mode")) {
    const std::string s = mode->get<std::string>();
    if (s == "sigma_only")
      n.pointing_mode = PointingMode::SigmaOnly;
    else if (s == "full")
      n.pointing_mode = PointingMode::Full;
    else
      o.fail("pointing_mode must be 'sigma_only' or 'full'");
  }
  n.thresholds = parse_thresholds(o);
  o.finish();
  return n;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") +
                          e.what());
  }
  Obj root(doc, "");
  const int version = root.integer("schema_version", 0);
  if (version != 1)
    root.fail("schema_version must be 1");

  Obj constants(root.at("constants"), "constants");
  const double beta = constants.number("beta");
  const double k = constants.number("k");
  const double rho = constants.number_or("rho", 0.0);
  const double gamma = constants.number("gamma");
  const double sigma = constants.number("sigma");
  constants.finish();

  const double horizon = root.number("horizon");
  if (horizon <= 0.0) root.fail("horizon must be positive");

  Numerics numerics;
  if (const json* n = root.find("numerics")) numerics = parse_numerics(*n);

  Scenario scenario{
      parse_set(root.at("set"), rho, gamma, horizon),
      parse_dynamics(root.at("dynamics")),
      ControlSet{},
      parse_cost(root.at("cost")),
      horizon,
      root.vector("x0"),
      beta,
      k,
      sigma,
      numerics,
      std::nullopt,
  };

  {
    Obj cs(root.at("control_set"), "control_set");
    scenario.control_set.lo = cs.vector("lo");
    scenario.control_set.hi = cs.vector("hi");
    cs.finish();
  }
  if (const json* c = root.find("control"))
    scenario.reference_control =
        parse_control(*c, scenario.numerics.control_intervals, horizon);

  root.finish();
  scenario.validate();

  // Sampled prox-regularity certificate at t = 0.
  // Boundary and probe points are generated from the family parameters.
  {
    std::vector<Vec> boundary;
    std::vector<Vec> probes;
    const int n = scenario.state_dim();
    std::mt19937 rng(422u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_direction = [&] {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = gauss(rng);
      const double norm = v.norm();
      return norm > 0.0 ? Vec(v / norm) : Vec(Vec::Unit(n, 0));
    };
    for (int s = 0; s < 16; ++s) {
      const Vec dir = random_direction();
      // Walk from x0 inward/outward to the boundary along dir by bisection
      // of the signed distance, if a bracketing is found within reach.
      double lo = 0.0, hi = 4.0 * (1.0 + scenario.x0.norm());
      const double d0 = scenario.set.signed_distance(0.0, scenario.x0);
      double dhi =
          scenario.set.signed_distance(0.0, scenario.x0 + hi * dir);
      if ((d0 <= 0.0) == (dhi <= 0.0)) continue;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm =
            scenario.set.signed_distance(0.0, scenario.x0 + mid * dir);
        if ((d0 <= 0.0) == (dm <= 0.0))
          lo = mid;
        else
          hi = mid;
      }
      const Vec xb = scenario.x0 + 0.5 * (lo + hi) * dir;
      boundary.push_back(xb);
      probes.push_back(scenario.x0);
      probes.push_back(xb);
    }
    const ProxCheckReport prox =
        prox_check(scenario.set, 0.0, boundary, probes);
    if (prox.max_violation > 1e-9)
      throw ValidationError(
          "sampled prox-regularity violated: max violation " +
          std::to_string(prox.max_violation));
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

namespace {

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::string emit_scenario(const Scenario& s) {
  json doc;
  doc["schema_version"] = 1;

  json set;
  switch (s.set.kind()) {
    case SetKind::Halfspace: {
      set["kind"] = "halfspace";
      set["normal"] = vector_to_json(s.set.halfspace_normal());
      set["offset"] = s.set.scalar_motion().value0;
      if (s.set.scalar_motion().rate != 0.0)
        set["offset_motion"] = {{"type", "linear"},
                                {"rate", s.set.scalar_motion().rate}};
      break;
    }
    case SetKind::Ball:
    case SetKind::BallComplement: {
      set["kind"] =
          s.set.kind() == SetKind::Ball ? "ball" : "ball_complement";
      set["center"] = vector_to_json(s.set.center_motion().value0);
      set["radius"] = s.set.scalar_motion().value0;
      if (s.set.scalar_motion().rate != 0.0)
        set["radius_motion"] = {{"type", "linear"},
                                {"rate", s.set.scalar_motion().rate}};
      if (s.set.center_motion().velocity.norm() != 0.0)
        set["center_motion"] = {
            {"type", "linear"},
            {"velocity", vector_to_json(s.set.center_motion().velocity)}};
      break;
    }
    case SetKind::SublevelEllipsoid: {
      set["kind"] = "sublevel";
      set["semi_axes"] = vector_to_json(s.set.semi_axes());
      set["center"] = vector_to_json(s.set.center_motion().value0);
      if (s.set.center_motion().velocity.norm() != 0.0)
        set["center_motion"] = {
            {"type", "linear"},
            {"velocity", vector_to_json(s.set.center_motion().velocity)}};
      break;
    }
  }
  doc["set"] = std::move(set);

  json dynamics;
  switch (s.dynamics.kind()) {
    case DynamicsModel::Kind::ControlDirect:
      dynamics["kind"] = "control_direct";
      dynamics["dimension"] = s.dynamics.state_dim();
      break;
    case DynamicsModel::Kind::Affine:
      dynamics["kind"] = "affine";
      dynamics["A"] = matrix_to_json(s.dynamics.A());
      dynamics["B"] = matrix_to_json(s.dynamics.B());
      dynamics["c"] = vector_to_json(s.dynamics.c());
      break;
    case DynamicsModel::Kind::Custom:
      dynamics["kind"] = "custom";
      dynamics["name"] = s.dynamics.name();
      break;
  }
  doc["dynamics"] = std::move(dynamics);

  doc["control_set"] = {{"lo", vector_to_json(s.control_set.lo)},
                        {"hi", vector_to_json(s.control_set.hi)}};
  doc["cost"] = s.cost.kind == CostModel::Kind::Linear
                    ? json{{"kind", "linear"},
                           {"coefficients", vector_to_json(s.cost.coeff)}}
                    : json{{"kind", "quadratic"},
                           {"x_ref", vector_to_json(s.cost.coeff)}};
  doc["horizon"] = s.horizon;
  doc["x0"] = vector_to_json(s.x0);
  doc["constants"] = {{"beta", s.f_bound},
                      {"k", s.f_lipschitz},
                      {"rho", s.set.prox_radius()},
                      {"gamma", s.set.set_lipschitz()},
                      {"sigma", s.pointing_margin}};

  json numerics;
  if (s.numerics.epsilon) numerics["epsilon"] = *s.numerics.epsilon;
  if (!s.numerics.eps_schedule.empty())
    numerics["eps_schedule"] = s.numerics.eps_schedule;
  numerics["control_intervals"] = s.numerics.control_intervals;
  if (s.numerics.steps_per_interval > 0)
    numerics["steps_per_interval"] = s.numerics.steps_per_interval;
  numerics["measure_windows"] = s.numerics.measure_windows;
  numerics["endpoint_window_fraction"] = s.numerics.endpoint_window_fraction;
  numerics["pointing_mode"] =
      s.numerics.pointing_mode == PointingMode::Full ? "full" : "sigma_only";
  const Thresholds& t = s.numerics.thresholds;
  numerics["thresholds"] = {
      {"transversality", t.transversality},
      {"maximality", t.maximality},
      {"normal_component", t.normal_component},
      {"weak_equation", t.weak_equation},
      {"continuity_variation", t.continuity_variation},
      {"jump_alignment", t.jump_alignment},
      {"structure_time", t.structure_time}};
  doc["numerics"] = std::move(numerics);

  if (s.reference_control) {
    const Mat& values = s.reference_control->values;
    bool constant = true;
    for (int k = 1; k < values.cols(); ++k)
      if (values.col(k) != values.col(0)) constant = false;
    if (constant) {
      doc["control"] = {{"constant", vector_to_json(values.col(0))}};
    } else {
      doc["control"] = {{"values", matrix_to_json(values.transpose())}};
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace sweep
