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

#ifndef SWEEP_GEOMETRY_HPP
#define SWEEP_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sweep/errors.hpp"
#include "sweep/types.hpp"

namespace sweep {

enum class SetKind { Halfspace, Ball, BallComplement, SublevelEllipsoid };

/// Scalar parameter moving linearly in time: value0 + rate * t.
struct LinearMotion {
  double value0 = 0.0;
  double rate = 0.0;
  double at(double t) const { return value0 + rate * t; }
};

/// Vector parameter moving linearly in time.
struct LinearVectorMotion {
  Vec value0;
  Vec velocity;
  Vec at(double t) const { return value0 + t * velocity; }
};

/// A smooth rho-prox-regular moving set C(t).
///
/// Families: a moving halfspace {x : <a,x> >= s(t)}, a moving ball, the
/// (closed) complement of a moving ball, and a moving ellipsoid given as the
/// sublevel set of g(t,x) = sum ((x_i - c_i(t))/a_i)^2 - 1. The first three
/// expose closed-form distance calculus; the ellipsoid projects onto {g = 0}
/// by Newton iteration.
///
/// Sign convention for the signed distance: positive outside C(t), negative
/// inside, zero on the boundary. distance_gradient returns the unit external
/// normal on the boundary and the zero vector strictly inside.
///
/// Instances are immutable after construction; all member functions are pure.
class MovingSetModel {
 public:
  static MovingSetModel halfspace(Vec normal, LinearMotion offset,
                                  double prox_radius, double set_lipschitz);
  static MovingSetModel ball(LinearVectorMotion center, LinearMotion radius,
                             double prox_radius, double set_lipschitz);
  static MovingSetModel ball_complement(LinearVectorMotion center,
                                        LinearMotion radius, double prox_radius,
                                        double set_lipschitz);
  static MovingSetModel sublevel_ellipsoid(Vec semi_axes,
                                           LinearVectorMotion center,
                                           double prox_radius,
                                           double set_lipschitz);

  SetKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  double prox_radius() const { return prox_radius_; }
  double set_lipschitz() const { return set_lipschitz_; }

  /// Tolerance below which |d_S| counts as "on the boundary".
  double boundary_tolerance() const;

  /// Lipschitz bound for the distance gradient on the working band over
  /// [0, horizon], used by adjoint norm estimates.
  double curvature_bound(double horizon) const;

  double signed_distance(double t, const Vec& x) const;

  /// Nearest point of C(t); identity on C(t). Requires d_C(x) < rho/2.
  Vec project(double t, const Vec& x) const;

  /// Gradient of the distance outside, unit external normal on the boundary,
  /// zero strictly inside. Requires d_C(x) < rho/2.
  Vec distance_gradient(double t, const Vec& x) const;

  /// Hessian of the distance outside C(t), Hessian of the signed distance on
  /// the boundary, zero strictly inside. Requires d_C(x) < rho/2.
  Mat distance_hessian(double t, const Vec& x) const;

  /// Partial time derivative of d_S(., x) at t.
  double set_velocity(double t, const Vec& x) const;

  /// Unit external normal field, smoothly extended to the whole working band
  /// (both sides of the boundary). Used for normal components of adjoints.
  Vec boundary_normal(double t, const Vec& x) const;

  /// Jacobian of the penalty map x - proj_{C(t)}(x), with the boundary
  /// convention d*Hess + grad (x) grad; zero strictly inside.
  Mat penalty_jacobian(double t, const Vec& x) const;

  // Accessors for family parameters (used by samplers and serialization).
  const Vec& halfspace_normal() const { return direction_; }
  const LinearMotion& scalar_motion() const { return scalar_motion_; }
  const LinearVectorMotion& center_motion() const { return center_motion_; }
  const Vec& semi_axes() const { return semi_axes_; }

 private:
  MovingSetModel() = default;

  void check_band(double t, double outside_distance) const;
  // Projection of x onto the boundary manifold {g(t,.) = 0} by Newton.
  Vec project_to_levelset(double t, const Vec& x) const;
  double ellipsoid_g(double t, const Vec& x) const;
  Vec ellipsoid_grad(double t, const Vec& x) const;

  SetKind kind_ = SetKind::Halfspace;
  int dim_ = 0;
  double prox_radius_ = 0.0;
  double set_lipschitz_ = 0.0;
  Vec direction_;                   // halfspace: unit normal a of {<a,x> >= s(t)}
  LinearMotion scalar_motion_;      // halfspace offset s(t) or ball radius r(t)
  LinearVectorMotion center_motion_;  // ball / ellipsoid center c(t)
  Vec semi_axes_;                   // ellipsoid semi-axes
};

/// Sampled prox-regularity certificate: max over (boundary point x with
/// normal zeta, probe y in C) of <zeta, y-x> - |y-x|^2 / (2 rho).
struct ProxCheckReport {
  double max_violation = 0.0;
  std::size_t pair_count = 0;
};

ProxCheckReport prox_check(const MovingSetModel& set, double t,
                           const std::vector<Vec>& boundary_samples,
                           const std::vector<Vec>& probe_samples);

/// Where a trajectory meets the boundary of C(t): the contact set I_d as
/// closed intervals, its complement, strict sign changes of the signed
/// distance, and the first contact time.
struct BoundaryStructure {
  std::vector<double> crossing_times;
  std::vector<Interval> i_boundary;
  std::vector<Interval> i_interior;
  std::optional<double> t_bar;
  double band = 0.0;
};

}  // namespace sweep

#endif
