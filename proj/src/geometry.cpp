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

#include "sweep/geometry.hpp"

#include <cmath>
#include <limits>

namespace sweep {

namespace {
constexpr double kClosedFormBoundaryTol = 1e-9;
constexpr double kSublevelBoundaryTol = 1e-7;
constexpr double kSetVelocityStep = 1e-6;
constexpr int kNewtonMaxIters = 50;
constexpr double kNewtonTol = 1e-12;
}  // namespace

MovingSetModel MovingSetModel::halfspace(Vec normal, LinearMotion offset,
                                         double prox_radius,
                                         double set_lipschitz) {
  if (normal.size() == 0 || normal.norm() == 0.0)
    throw ValidationError("halfspace normal must be nonzero");
  if (prox_radius <= 0.0) throw ValidationError("prox_radius must be positive");
  if (set_lipschitz < 0.0)
    throw ValidationError("set_lipschitz must be nonnegative");
  MovingSetModel m;
  m.kind_ = SetKind::Halfspace;
  m.dim_ = static_cast<int>(normal.size());
  const double len = normal.norm();
  m.direction_ = normal / len;
  // Keep {<a,x> >= s(t)} invariant under the normalization of a.
  m.scalar_motion_ = {offset.value0 / len, offset.rate / len};
  m.prox_radius_ = prox_radius;
  m.set_lipschitz_ = set_lipschitz;
  return m;
}

MovingSetModel MovingSetModel::ball(LinearVectorMotion center,
                                    LinearMotion radius, double prox_radius,
                                    double set_lipschitz) {
  if (center.value0.size() == 0)
    throw ValidationError("ball center must have positive dimension");
  if (center.velocity.size() != center.value0.size())
    throw ValidationError("ball center velocity dimension mismatch");
  if (radius.value0 <= 0.0) throw ValidationError("ball radius must be positive");
  if (prox_radius <= 0.0) throw ValidationError("prox_radius must be positive");
  MovingSetModel m;
  m.kind_ = SetKind::Ball;
  m.dim_ = static_cast<int>(center.value0.size());
  m.center_motion_ = std::move(center);
  m.scalar_motion_ = radius;
  m.prox_radius_ = prox_radius;
  m.set_lipschitz_ = set_lipschitz;
  return m;
}

MovingSetModel MovingSetModel::ball_complement(LinearVectorMotion center,
                                               LinearMotion radius,
                                               double prox_radius,
                                               double set_lipschitz) {
  MovingSetModel m = ball(std::move(center), radius, prox_radius, set_lipschitz);
  m.kind_ = SetKind::BallComplement;
  return m;
}

MovingSetModel MovingSetModel::sublevel_ellipsoid(Vec semi_axes,
                                                  LinearVectorMotion center,
                                                  double prox_radius,
                                                  double set_lipschitz) {
  if (semi_axes.size() == 0 || semi_axes.minCoeff() <= 0.0)
    throw ValidationError("ellipsoid semi-axes must be positive");
  if (center.value0.size() != semi_axes.size())
    throw ValidationError("ellipsoid center dimension mismatch");
  if (prox_radius <= 0.0) throw ValidationError("prox_radius must be positive");
  MovingSetModel m;
  m.kind_ = SetKind::SublevelEllipsoid;
  m.dim_ = static_cast<int>(semi_axes.size());
  m.semi_axes_ = std::move(semi_axes);
  m.center_motion_ = std::move(center);
  m.prox_radius_ = prox_radius;
  m.set_lipschitz_ = set_lipschitz;
  return m;
}

double MovingSetModel::boundary_tolerance() const {
  return kind_ == SetKind::SublevelEllipsoid ? kSublevelBoundaryTol
                                             : kClosedFormBoundaryTol;
}

double MovingSetModel::curvature_bound(double horizon) const {
  switch (kind_) {
    case SetKind::Halfspace:
      return 0.0;
    case SetKind::Ball: {
      // |Hess d| <= 1/|x-c| <= 1/r on the outside band; r is linear in t.
      const double rmin =
          std::min(scalar_motion_.at(0.0), scalar_motion_.at(horizon));
      return rmin > 0.0 ? 1.0 / rmin : 0.0;
    }
    case SetKind::BallComplement: {
      const double rmin =
          std::min(scalar_motion_.at(0.0), scalar_motion_.at(horizon));
      return rmin > 0.0 ? 2.0 / rmin : 0.0;
    }
    case SetKind::SublevelEllipsoid: {
      const double amin = semi_axes_.minCoeff();
      const double amax = semi_axes_.maxCoeff();
      return 2.0 * amax / (amin * amin);
    }
  }
  return 0.0;
}

double MovingSetModel::ellipsoid_g(double t, const Vec& x) const {
  const Vec c = center_motion_.at(t);
  double s = -1.0;
  for (int i = 0; i < dim_; ++i) {
    const double q = (x[i] - c[i]) / semi_axes_[i];
    s += q * q;
  }
  return s;
}

Vec MovingSetModel::ellipsoid_grad(double t, const Vec& x) const {
  const Vec c = center_motion_.at(t);
  Vec g(dim_);
  for (int i = 0; i < dim_; ++i)
    g[i] = 2.0 * (x[i] - c[i]) / (semi_axes_[i] * semi_axes_[i]);
  return g;
}

Vec MovingSetModel::project_to_levelset(double t, const Vec& x) const {
  // Newton on {xp + lambda * grad g(t,xp) = x, g(t,xp) = 0}. Accepts at
  // residual 1e-12 but keeps polishing toward the machine floor, which the
  // downstream second-difference checks rely on.
  Vec xp = x;
  double lambda = 0.0;
  Mat hess_g = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    hess_g(i, i) = 2.0 / (semi_axes_[i] * semi_axes_[i]);
  Mat J(dim_ + 1, dim_ + 1);
  Vec F(dim_ + 1);
  Vec best = xp;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kNewtonMaxIters; ++it) {
    const Vec g = ellipsoid_grad(t, xp);
    F.head(dim_) = xp + lambda * g - x;
    F[dim_] = ellipsoid_g(t, xp);
    const double fn = F.norm();
    if (fn < best_norm) {
      best_norm = fn;
      best = xp;
    }
    if (fn <= 1e-14) break;
    J.setZero();
    J.topLeftCorner(dim_, dim_) = Mat::Identity(dim_, dim_) + lambda * hess_g;
    J.topRightCorner(dim_, 1) = g;
    J.bottomLeftCorner(1, dim_) = g.transpose();
    const Vec delta = J.partialPivLu().solve(-F);
    xp += delta.head(dim_);
    lambda += delta[dim_];
  }
  if (best_norm <= kNewtonTol) return best;
  throw ProjectionFailure(
      "levelset projection Newton did not converge at t=" + std::to_string(t) +
      " (point too far from the boundary relative to rho)");
}

double MovingSetModel::signed_distance(double t, const Vec& x) const {
  switch (kind_) {
    case SetKind::Halfspace:
      return scalar_motion_.at(t) - direction_.dot(x);
    case SetKind::Ball:
      return (x - center_motion_.at(t)).norm() - scalar_motion_.at(t);
    case SetKind::BallComplement:
      return scalar_motion_.at(t) - (x - center_motion_.at(t)).norm();
    case SetKind::SublevelEllipsoid: {
      const double g = ellipsoid_g(t, x);
      if (g == 0.0) return 0.0;
      const Vec xb = project_to_levelset(t, x);
      return (g > 0.0 ? 1.0 : -1.0) * (x - xb).norm();
    }
  }
  return 0.0;
}

void MovingSetModel::check_band(double t, double outside_distance) const {
  const double band = prox_radius_ / 2.0;
  if (outside_distance >= band)
    throw OutOfProxBand(t, outside_distance, band);
}

Vec MovingSetModel::project(double t, const Vec& x) const {
  const double ds = signed_distance(t, x);
  check_band(t, std::max(ds, 0.0));
  if (ds <= 0.0) return x;
  switch (kind_) {
    case SetKind::Halfspace:
      return x + ds * direction_;
    case SetKind::Ball: {
      const Vec c = center_motion_.at(t);
      return c + scalar_motion_.at(t) * (x - c).normalized();
    }
    case SetKind::BallComplement: {
      const Vec c = center_motion_.at(t);
      const Vec d = x - c;
      if (d.norm() == 0.0)
        throw OutOfProxBand(t, scalar_motion_.at(t), prox_radius_ / 2.0);
      return c + scalar_motion_.at(t) * d.normalized();
    }
    case SetKind::SublevelEllipsoid:
      return project_to_levelset(t, x);
  }
  return x;
}

Vec MovingSetModel::boundary_normal(double t, const Vec& x) const {
  switch (kind_) {
    case SetKind::Halfspace:
      return -direction_;
    case SetKind::Ball: {
      const Vec d = x - center_motion_.at(t);
      const double n = d.norm();
      if (n == 0.0) return Vec::Zero(dim_);
      return d / n;
    }
    case SetKind::BallComplement: {
      const Vec d = x - center_motion_.at(t);
      const double n = d.norm();
      if (n == 0.0) return Vec::Zero(dim_);
      return -d / n;
    }
    case SetKind::SublevelEllipsoid: {
      const Vec g = ellipsoid_grad(t, x);
      const double n = g.norm();
      if (n == 0.0) return Vec::Zero(dim_);
      return g / n;
    }
  }
  return Vec::Zero(dim_);
}

Vec MovingSetModel::distance_gradient(double t, const Vec& x) const {
  const double ds = signed_distance(t, x);
  check_band(t, std::max(ds, 0.0));
  const double tol = boundary_tolerance();
  if (ds < -tol) return Vec::Zero(dim_);
  if (ds <= tol) return boundary_normal(t, x);
  // Outside: (x - proj(x)) / d, which the closed forms reduce to the normal.
  switch (kind_) {
    case SetKind::Halfspace:
      return -direction_;
    case SetKind::Ball:
      return (x - center_motion_.at(t)).normalized();
    case SetKind::BallComplement:
      return -(x - center_motion_.at(t)).normalized();
    case SetKind::SublevelEllipsoid: {
      const Vec xb = project_to_levelset(t, x);
      return (x - xb) / ds;
    }
  }
  return Vec::Zero(dim_);
}

Mat MovingSetModel::distance_hessian(double t, const Vec& x) const {
  const double ds = signed_distance(t, x);
  check_band(t, std::max(ds, 0.0));
  const double tol = boundary_tolerance();
  if (ds < -tol) return Mat::Zero(dim_, dim_);
  switch (kind_) {
    case SetKind::Halfspace:
      return Mat::Zero(dim_, dim_);
    case SetKind::Ball: {
      const Vec d = x - center_motion_.at(t);
      const double n = d.norm();
      const Vec u = d / n;
      return (Mat::Identity(dim_, dim_) - u * u.transpose()) / n;
    }
    case SetKind::BallComplement: {
      const Vec d = x - center_motion_.at(t);
      const double n = d.norm();
      if (n == 0.0) throw OutOfProxBand(t, scalar_motion_.at(t), prox_radius_ / 2.0);
      const Vec u = d / n;
      return -(Mat::Identity(dim_, dim_) - u * u.transpose()) / n;
    }
    case SetKind::SublevelEllipsoid: {
      Mat hess_g = Mat::Zero(dim_, dim_);
      for (int i = 0; i < dim_; ++i)
        hess_g(i, i) = 2.0 / (semi_axes_[i] * semi_axes_[i]);
      if (ds <= tol) {
        // Signed-distance Hessian on the boundary: tangentially projected
        // shape operator of the level set.
        const Vec g = ellipsoid_grad(t, x);
        const double gn = g.norm();
        const Vec u = g / gn;
        const Mat P = Mat::Identity(dim_, dim_) - u * u.transpose();
        return P * (hess_g / gn) * P;
      }
      // Outside: differentiate proj implicitly through the Newton system.
      const Vec xb = project_to_levelset(t, x);
      const Vec g = ellipsoid_grad(t, xb);
      const Vec u = (x - xb) / ds;  // unit normal at the foot point
      const double lambda = ds / g.norm();
      const Mat H = (Mat::Identity(dim_, dim_) + lambda * hess_g)
                        .partialPivLu()
                        .solve(Mat::Identity(dim_, dim_));
      const Vec Hg = H * g;
      const Mat proj_jac = H - (Hg * Hg.transpose()) / g.dot(Hg);
      return (Mat::Identity(dim_, dim_) - proj_jac - u * u.transpose()) / ds;
    }
  }
  return Mat::Zero(dim_, dim_);
}

double MovingSetModel::set_velocity(double t, const Vec& x) const {
  switch (kind_) {
    case SetKind::Halfspace:
      return scalar_motion_.rate;
    case SetKind::Ball: {
      const Vec d = x - center_motion_.at(t);
      const double n = d.norm();
      const double radial = n == 0.0 ? 0.0 : -d.dot(center_motion_.velocity) / n;
      return radial - scalar_motion_.rate;
    }
    case SetKind::BallComplement: {
      const Vec d = x - center_motion_.at(t);
      const double n = d.norm();
      const double radial = n == 0.0 ? 0.0 : d.dot(center_motion_.velocity) / n;
      return radial + scalar_motion_.rate;
    }
    case SetKind::SublevelEllipsoid: {
      const double dt = kSetVelocityStep;
      return (signed_distance(t + dt, x) - signed_distance(t - dt, x)) /
             (2.0 * dt);
    }
  }
  return 0.0;
}

Mat MovingSetModel::penalty_jacobian(double t, const Vec& x) const {
  const double ds = signed_distance(t, x);
  check_band(t, std::max(ds, 0.0));
  if (ds < -boundary_tolerance()) return Mat::Zero(dim_, dim_);
  const Vec grad = distance_gradient(t, x);
  const Mat hess = distance_hessian(t, x);
  return std::max(ds, 0.0) * hess + grad * grad.transpose();
}

ProxCheckReport prox_check(const MovingSetModel& set, double t,
                           const std::vector<Vec>& boundary_samples,
                           const std::vector<Vec>& probe_samples) {
  ProxCheckReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  const double rho = set.prox_radius();
  for (const Vec& x : boundary_samples) {
    const Vec zeta = set.boundary_normal(t, x);
    for (const Vec& y : probe_samples) {
      const Vec diff = y - x;
      const double lhs = zeta.dot(diff) - diff.squaredNorm() / (2.0 * rho);
      report.max_violation = std::max(report.max_violation, lhs);
      ++report.pair_count;
    }
  }
  if (report.pair_count == 0) report.max_violation = 0.0;
  return report;
}

}  // namespace sweep
