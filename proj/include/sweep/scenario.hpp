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

#ifndef SWEEP_SCENARIO_HPP
#define SWEEP_SCENARIO_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sweep/geometry.hpp"
#include "sweep/types.hpp"

namespace sweep {

/// Compact convex box of admissible control values.
struct ControlSet {
  Vec lo;
  Vec hi;
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& u, double tol = 1e-12) const;
  void validate() const;
  /// All 2^m corners, enumerated in a fixed bit order.
  std::vector<Vec> vertices() const;
};

/// Terminal cost h(x(T)): linear <c, x> or quadratic 0.5 |x - x_ref|^2.
struct CostModel {
  enum class Kind { Linear, Quadratic };
  Kind kind = Kind::Linear;
  Vec coeff;  // linear coefficient c, or reference point x_ref
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
};

/// Hooks for dynamics registered in code under a string name.
struct CustomDynamics {
  int state_dim = 0;
  int control_dim = 0;
  std::function<Vec(const Vec&, const Vec&)> f;
  std::function<Mat(const Vec&, const Vec&)> jac_x;
  std::function<Mat(const Vec&, const Vec&)> jac_u;
};

void register_dynamics(const std::string& name, CustomDynamics dynamics);
bool dynamics_registered(const std::string& name);

/// Velocity field f(x, u): the identity-in-control family f = u, an affine
/// family f = A x + B u + c, or a registered custom field.
class DynamicsModel {
 public:
  enum class Kind { ControlDirect, Affine, Custom };

  static DynamicsModel control_direct(int dim);
  static DynamicsModel affine(Mat A, Mat B, Vec c);
  static DynamicsModel custom(const std::string& name);

  Kind kind() const { return kind_; }
  int state_dim() const { return state_dim_; }
  int control_dim() const { return control_dim_; }
  const std::string& name() const { return name_; }
  const Mat& A() const { return A_; }
  const Mat& B() const { return B_; }
  const Vec& c() const { return c_; }

  Vec eval(const Vec& x, const Vec& u) const;
  Mat jac_x(const Vec& x, const Vec& u) const;
  Mat jac_u(const Vec& x, const Vec& u) const;
  /// True when both Jacobians are state and control independent, letting
  /// hot loops hoist them.
  bool constant_jacobians() const { return kind_ != Kind::Custom; }

 private:
  Kind kind_ = Kind::ControlDirect;
  int state_dim_ = 0;
  int control_dim_ = 0;
  Mat A_, B_;
  Vec c_;
  std::string name_;
  CustomDynamics custom_;
};

/// Piecewise-constant control on a uniform partition of [0, horizon].
struct ControlSignal {
  double horizon = 0.0;
  Mat values;  // control_dim x intervals

  static ControlSignal constant(const Vec& u, int intervals, double horizon);

  int intervals() const { return static_cast<int>(values.cols()); }
  int dim() const { return static_cast<int>(values.rows()); }
  double interval_length() const { return horizon / intervals(); }
  int interval_of(double t) const;
  Vec value_at(double t) const { return values.col(interval_of(t)); }
  /// L2([0,T]) norm of the difference to another signal on the same grid.
  double l2_distance(const ControlSignal& other) const;
  double l2_norm() const;
  void validate(const ControlSet& set) const;
};

struct Thresholds {
  double transversality = 1e-8;
  double maximality = 1e-6;
  double normal_component = 1e-3;
  double weak_equation = 1e-2;
  double continuity_variation = 1e-3;
  double jump_alignment = 1e-6;  // angular tolerance for jump directions
  double structure_time = 1e-3;  // endpoint tolerance for interval structure
};

enum class PointingMode { SigmaOnly, Full };

struct Numerics {
  std::optional<double> epsilon;
  std::vector<double> eps_schedule;
  int control_intervals = 10;
  int steps_per_interval = 0;  // 0: derived from epsilon
  int measure_windows = 100;
  double endpoint_window_fraction = 0.01;
  PointingMode pointing_mode = PointingMode::SigmaOnly;
  Thresholds thresholds;
};

/// The full problem datum.
struct Scenario {
  MovingSetModel set;
  DynamicsModel dynamics;
  ControlSet control_set;
  CostModel cost;
  double horizon = 0.0;
  Vec x0;
  double f_bound = 0.0;        // beta
  double f_lipschitz = 0.0;    // k
  double pointing_margin = 0.0;  // sigma
  Numerics numerics;
  std::optional<ControlSignal> reference_control;

  int state_dim() const { return static_cast<int>(x0.size()); }
  /// gamma + beta for exact solutions, gamma + 2 beta for regularized ones.
  double velocity_bound(bool regularized) const {
    return set.set_lipschitz() + (regularized ? 2.0 : 1.0) * f_bound;
  }
  /// Checks feasibility of x0, box sanity, sampled consistency of f_bound and
  /// sampled prox-regularity. Throws ValidationError.
  void validate() const;
  /// The reference control, or a ValidationError naming the command.
  const ControlSignal& require_control(const std::string& why) const;
};

}  // namespace sweep

#endif
