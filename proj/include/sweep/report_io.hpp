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

#ifndef SWEEP_REPORT_IO_HPP
#define SWEEP_REPORT_IO_HPP

#include <string>
#include <vector>

#include "sweep/optimizer.hpp"
#include "sweep/pmp.hpp"

namespace sweep {

/// Decimal text with 17 significant digits (round-trips doubles).
std::string format_double(double v);

/// Columns t, x_1..x_n, d, d_signed.
std::string trajectory_csv(const Trajectory& traj);

/// Columns t, p_1..p_n, xi, eta, p_normal.
std::string adjoint_csv(const AdjointPath& path);

/// One JSON object per window: {"window": [a,b], "t_center": c, "mass": [..]}.
std::string atoms_json(const MultiplierReport& report);

std::string penetration_json(const PenetrationReport& report, double epsilon);

std::string pmp_report_json(const PMPReport& report);

/// Human-readable PASS/FAIL lines for a PMP report.
std::string pmp_report_summary(const PMPReport& report);

std::string solve_report_json(const SolveReport& report,
                              const std::string& trajectory_file,
                              const std::string& adjoint_file);

std::string continuation_table_csv(const ContinuationReport& report);

/// Per-epsilon limit curves downsampled on shared times:
/// columns t, then p_1..p_n per schedule entry.
std::string limit_curves_csv(const LimitStudyReport& report);

}  // namespace sweep

#endif
