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

#include "sweep/scenario.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "sweep/errors.hpp"

namespace sweep {

bool ControlSet::contains(const Vec& u, double tol) const {
  if (u.size() != lo.size()) return false;
  for (int i = 0; i < u.size(); ++i)
    if (u[i] < lo[i] - tol || u[i] > hi[i] + tol) return false;
  return true;
}

void ControlSet::validate() const {
  if (lo.size() == 0) throw ValidationError("control_set is empty");
  if (lo.size() != hi.size())
    throw ValidationError("control_set lo/hi dimension mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i])
      throw ValidationError("control_set: lo > hi at coordinate " +
                            std::to_string(i));
}

std::vector<Vec> ControlSet::vertices() const {
  const int m = dim();
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(1) << m);
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << m); ++mask) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    out.push_back(std::move(v));
  }
  return out;
}

double CostModel::value(const Vec& x) const {
  if (kind == Kind::Linear) return coeff.dot(x);
  return 0.5 * (x - coeff).squaredNorm();
}

Vec CostModel::gradient(const Vec& x) const {
  if (kind == Kind::Linear) return coeff;
  return x - coeff;
}

namespace {
std::map<std::string, CustomDynamics>& dynamics_registry() {
  static std::map<std::string, CustomDynamics> registry;
  return registry;
}
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void register_dynamics(const std::string& name, CustomDynamics dynamics) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  dynamics_registry()[name] = std::move(dynamics);
}

bool dynamics_registered(const std::string& name) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  return dynamics_registry().count(name) > 0;
}

DynamicsModel DynamicsModel::control_direct(int dim) {
  if (dim <= 0) throw ValidationError("control_direct dimension must be positive");
  DynamicsModel d;
  d.kind_ = Kind::ControlDirect;
  d.state_dim_ = dim;
  d.control_dim_ = dim;
  return d;
}

DynamicsModel DynamicsModel::affine(Mat A, Mat B, Vec c) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw ValidationError("affine dynamics: A must be square");
  if (B.rows() != n) throw ValidationError("affine dynamics: B row mismatch");
  if (c.size() != n) throw ValidationError("affine dynamics: c size mismatch");
  DynamicsModel d;
  d.kind_ = Kind::Affine;
  d.state_dim_ = n;
  d.control_dim_ = static_cast<int>(B.cols());
  d.A_ = std::move(A);
  d.B_ = std::move(B);
  d.c_ = std::move(c);
  return d;
}

DynamicsModel DynamicsModel::custom(const std::string& name) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto it = dynamics_registry().find(name);
  if (it == dynamics_registry().end())
    throw ValidationError("unknown custom dynamics: " + name);
  DynamicsModel d;
  d.kind_ = Kind::Custom;
  d.name_ = name;
  d.custom_ = it->second;
  d.state_dim_ = d.custom_.state_dim;
  d.control_dim_ = d.custom_.control_dim;
  return d;
}

Vec DynamicsModel::eval(const Vec& x, const Vec& u) const {
  switch (kind_) {
    case Kind::ControlDirect:
      return u;
    case Kind::Affine:
      return A_ * x + B_ * u + c_;
    case Kind::Custom:
      return custom_.f(x, u);
  }
  return Vec();
}

Mat DynamicsModel::jac_x(const Vec& x, const Vec& u) const {
  switch (kind_) {
    case Kind::ControlDirect:
      return Mat::Zero(state_dim_, state_dim_);
    case Kind::Affine:
      return A_;
    case Kind::Custom:
      return custom_.jac_x(x, u);
  }
  return Mat();
}

Mat DynamicsModel::jac_u(const Vec& x, const Vec& u) const {
  switch (kind_) {
    case Kind::ControlDirect:
      return Mat::Identity(state_dim_, state_dim_);
    case Kind::Affine:
      return B_;
    case Kind::Custom:
      return custom_.jac_u(x, u);
  }
  return Mat();
}

ControlSignal ControlSignal::constant(const Vec& u, int intervals,
                                      double horizon) {
  if (intervals <= 0)
    throw ValidationError("control signal needs at least one interval");
  ControlSignal s;
  s.horizon = horizon;
  s.values = u.replicate(1, intervals);
  return s;
}

int ControlSignal::interval_of(double t) const {
  const int n = intervals();
  const int k = static_cast<int>(std::floor(t / horizon * n));
  return std::min(std::max(k, 0), n - 1);
}

double ControlSignal::l2_distance(const ControlSignal& other) const {
  if (other.intervals() != intervals() || other.dim() != dim())
    throw ValidationError("control signals live on different grids");
  const double dt = interval_length();
  return std::sqrt(dt * (values - other.values).squaredNorm());
}

double ControlSignal::l2_norm() const {
  return std::sqrt(interval_length() * values.squaredNorm());
}

void ControlSignal::validate(const ControlSet& set) const {
  if (intervals() <= 0)
    throw ValidationError("control signal has no intervals");
  if (dim() != set.dim())
    throw ValidationError("control signal dimension does not match control set");
  for (int k = 0; k < intervals(); ++k)
    if (!set.contains(values.col(k)))
      throw ValidationError("control value outside U at interval " +
                            std::to_string(k));
}

void Scenario::validate() const {
  if (horizon <= 0.0) throw ValidationError("horizon must be positive");
  if (x0.size() == 0) throw ValidationError("x0 is empty");
  if (!x0.allFinite()) throw ValidationError("x0 must be finite");
  control_set.validate();
  if (dynamics.state_dim() != state_dim())
    throw ValidationError("dynamics state dimension does not match x0");
  if (dynamics.control_dim() != control_set.dim())
    throw ValidationError("dynamics control dimension does not match control_set");
  if (set.dimension() != state_dim())
    throw ValidationError("moving set dimension does not match x0");
  if (cost.coeff.size() != state_dim())
    throw ValidationError("cost coefficient dimension does not match x0");
  if (f_bound < 0.0) throw ValidationError("beta must be nonnegative");
  if (pointing_margin <= 0.0) throw ValidationError("sigma must be positive");

  const double ds0 = set.signed_distance(0.0, x0);
  if (ds0 > set.boundary_tolerance())
    throw ValidationError("infeasible x0: signed distance at t=0 is " +
                          std::to_string(ds0));

  // Sampled consistency of beta: control vertices at x0 and at a few probe
  // states within the reachable scale.
  std::vector<Vec> probes = {x0};
  const double reach = horizon * velocity_bound(true);
  for (int i = 0; i < state_dim(); ++i) {
    Vec e = Vec::Zero(state_dim());
    e[i] = reach;
    probes.push_back(x0 + e);
    probes.push_back(x0 - e);
  }
  double observed = 0.0;
  for (const Vec& x : probes)
    for (const Vec& u : control_set.vertices())
      observed = std::max(observed, dynamics.eval(x, u).norm());
  if (observed > f_bound + 1e-9)
    throw ValidationError("inconsistent beta: sampled max |f| = " +
                          std::to_string(observed) + " exceeds beta = " +
                          std::to_string(f_bound));

  if (reference_control) {
    if (std::abs(reference_control->horizon - horizon) > 1e-12)
      throw ValidationError("reference control horizon mismatch");
    reference_control->validate(control_set);
  }
  if (numerics.control_intervals <= 0)
    throw ValidationError("control_intervals must be positive");
}

const ControlSignal& Scenario::require_control(const std::string& why) const {
  if (!reference_control)
    throw ValidationError("scenario has no control block, required for " + why);
  return *reference_control;
}

}  // namespace sweep
