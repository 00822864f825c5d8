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

// Test-only oracles, independent of the library's computational paths:
// central differences of the signed distance, the closed-form solution of
// the Example-1 dynamics, and a scaling-and-squaring matrix exponential.

#ifndef SWEEP_TESTS_ORACLES_HPP
#define SWEEP_TESTS_ORACLES_HPP

#include <cmath>

#include "sweep/geometry.hpp"
#include "sweep/scenario.hpp"
#include "sweep/scenario_io.hpp"

namespace oracles {

using sweep::Mat;
using sweep::Vec;

inline Vec fd_gradient(const sweep::MovingSetModel& set, double t, const Vec& x,
                       double step = 1e-5) {
  Vec g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Vec hi = x, lo = x;
    hi[i] += step;
    lo[i] -= step;
    g[i] = (set.signed_distance(t, hi) - set.signed_distance(t, lo)) /
           (2.0 * step);
  }
  return g;
}

inline Mat fd_hessian(const sweep::MovingSetModel& set, double t, const Vec& x,
                      double step = 1e-5) {
  const int n = static_cast<int>(x.size());
  Mat h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec pp = x, pm = x, mp = x, mm = x;
      pp[i] += step;
      pp[j] += step;
      pm[i] += step;
      pm[j] -= step;
      mp[i] -= step;
      mp[j] += step;
      mm[i] -= step;
      mm[j] -= step;
      h(i, j) = (set.signed_distance(t, pp) - set.signed_distance(t, pm) -
                 set.signed_distance(t, mp) + set.signed_distance(t, mm)) /
                (4.0 * step * step);
    }
  }
  return h;
}

// Closed-form solution of the Example-1 sweeping process for a constant
// control with u_y < 0 and C = {y >= 0}: contact at t_bar = y0/|u_y|, then
// the state slides along the boundary.
struct Example1Exact {
  double y0;
  double ux;
  double uy;

  double t_bar() const { return y0 / -uy; }
  Vec state(double t) const {
    Vec x(2);
    x[0] = ux * t;
    x[1] = std::max(y0 + uy * t, 0.0);
    return x;
  }
};

// Closed-form solution of the regularized Example-1 dynamics: after contact
// the vertical coordinate relaxes into a boundary layer of depth eps |u_y|.
struct Example1Regularized {
  double y0;
  double ux;
  double uy;
  double eps;

  double t_bar() const { return y0 / -uy; }
  Vec state(double t) const {
    Vec x(2);
    x[0] = ux * t;
    if (t <= t_bar()) {
      x[1] = y0 + uy * t;
    } else {
      x[1] = eps * uy * (1.0 - std::exp(-(t - t_bar()) / eps));
    }
    return x;
  }
  // Backward adjoint for the terminal cost x + y: p_x constant at -1, p_y
  // decaying off the terminal condition through the layer.
  Vec adjoint(double t, double horizon) const {
    Vec p(2);
    p[0] = -1.0;
    p[1] = -std::exp((t - horizon) / eps);
    return p;
  }
};

inline Mat expm(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  Mat scaled = a;
  while (norm > 0.5) {
    scaled *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  Mat result = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

inline sweep::Scenario load(const std::string& name) {
  return sweep::load_scenario(std::string(SWEEP_SCENARIO_DIR) + "/" + name);
}

}  // namespace oracles

#endif
