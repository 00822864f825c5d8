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

#ifndef SWEEP_SCENARIO_IO_HPP
#define SWEEP_SCENARIO_IO_HPP

#include <string>

#include "sweep/scenario.hpp"

namespace sweep {

/// Parses and validates a scenario document. Unknown fields are rejected;
/// errors name the offending field path. Throws ValidationError.
Scenario parse_scenario(const std::string& json_text);

/// Loads a scenario from a file path.
Scenario load_scenario(const std::string& path);

/// Serializes a scenario back to its document form. parse(emit(s)) == s.
std::string emit_scenario(const Scenario& scenario);

}  // namespace sweep

#endif
