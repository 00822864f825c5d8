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

#ifndef SWEEP_ERRORS_HPP
#define SWEEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sweep {

/// Invalid problem data: malformed scenario files, inconsistent constants,
/// infeasible initial states, misconfigured solver inputs.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation left its domain of validity at runtime.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The queried point lies at distance >= rho/2 from the set, where the metric
/// projection is no longer guaranteed single valued.
class OutOfProxBand : public NumericalError {
 public:
  OutOfProxBand(double t, double distance, double band)
      : NumericalError("point out of prox band at t=" + std::to_string(t) +
                       ": distance " + std::to_string(distance) +
                       " >= rho/2 = " + std::to_string(band)),
        time(t),
        distance(distance),
        band(band) {}
  double time;
  double distance;
  double band;
};

/// Newton iteration for a boundary projection did not converge.
class ProjectionFailure : public NumericalError {
 public:
  explicit ProjectionFailure(const std::string& what) : NumericalError(what) {}
};

/// Armijo backtracking exhausted its halvings without a decrease.
class NonDecreasingCost : public NumericalError {
 public:
  explicit NonDecreasingCost(const std::string& what) : NumericalError(what) {}
};

}  // namespace sweep

#endif
