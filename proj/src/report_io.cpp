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

#include "sweep/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sweep {

using nlohmann::json;

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

namespace {

void append_row(std::string& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  out += '\n';
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  const int n = static_cast<int>(traj.states.rows());
  std::string out = "t";
  for (int i = 1; i <= n; ++i) out += ",x_" + std::to_string(i);
  out += ",d,d_signed\n";
  std::vector<double> row(n + 3);
  for (int k = 0; k < traj.nodes(); ++k) {
    row[0] = traj.times[k];
    for (int i = 0; i < n; ++i) row[1 + i] = traj.states(i, k);
    row[n + 1] = traj.distances[k];
    row[n + 2] = traj.signed_distances[k];
    append_row(out, row);
  }
  return out;
}

std::string adjoint_csv(const AdjointPath& path) {
  const int n = static_cast<int>(path.p.rows());
  std::string out = "t";
  for (int i = 1; i <= n; ++i) out += ",p_" + std::to_string(i);
  out += ",xi,eta,p_normal\n";
  std::vector<double> row(n + 4);
  for (int k = 0; k < path.nodes(); ++k) {
    row[0] = path.times[k];
    for (int i = 0; i < n; ++i) row[1 + i] = path.p(i, k);
    row[n + 1] = path.xi[k];
    row[n + 2] = path.eta[k];
    row[n + 3] = path.p_normal[k];
    append_row(out, row);
  }
  return out;
}

std::string atoms_json(const MultiplierReport& report) {
  json atoms = json::array();
  for (const MeasureAtom& atom : report.atoms) {
    atoms.push_back({{"window", {atom.window_lo, atom.window_hi}},
                     {"t_center", atom.t_center},
                     {"mass", vec_json(atom.mass)}});
  }
  json doc = {{"atoms", std::move(atoms)},
              {"xi_mass_total", report.xi_mass_total},
              {"eta_max", report.eta_max}};
  return doc.dump(2) + "\n";
}

std::string penetration_json(const PenetrationReport& report, double epsilon) {
  json doc = {{"epsilon", epsilon},
              {"max_ratio", report.max_ratio},
              {"max_distance", report.max_distance},
              {"bound", report.bound},
              {"tolerance", report.tolerance},
              {"pass", report.pass}};
  return doc.dump(2) + "\n";
}

namespace {

json pointing_json(const PointingReport& p) {
  return {{"verdict", to_string(p.verdict)},
          {"mode", p.mode == PointingMode::Full ? "full" : "sigma_only"},
          {"margin", p.margin},
          {"min_L", p.min_L},
          {"max_L", p.max_L},
          {"threshold_m1", p.threshold_m1},
          {"threshold_m2", p.threshold_m2},
          {"vacuous", p.vacuous}};
}

}  // namespace

std::string pmp_report_json(const PMPReport& r) {
  json weak_terms = json::array();
  for (const WeakEquationTerm& term : r.weak_details.terms)
    weak_terms.push_back({{"coordinate", term.coordinate},
                          {"shape", term.shape},
                          {"defect", term.defect}});
  json doc = {
      {"pointing", pointing_json(r.pointing)},
      {"transversality_residual", r.transversality_residual},
      {"maximality_residual", r.maximality_residual},
      {"maximality_selection_min", vec_json(r.maximality_selection_min)},
      {"maximality_selection_max", vec_json(r.maximality_selection_max)},
      {"maximality_tie_counts", r.maximality_tie_counts},
      {"normal_component_sup", r.normal_component_sup},
      {"weak_equation_residual", r.weak_equation_residual},
      {"weak_equation_terms", std::move(weak_terms)},
      {"structure",
       {{"i_boundary_is_terminal_interval",
         r.structure.i_boundary_is_terminal_interval},
        {"i_boundary_subset_zero", r.structure.i_boundary_subset_zero},
        {"jumps_normal_only", r.structure.jumps_normal_only},
        {"continuous_at_tbar", r.structure.continuous_at_tbar}}},
      {"stray_atom_mass_fraction", r.stray_atom_mass_fraction},
      {"thresholds",
       {{"transversality", r.thresholds.transversality},
        {"maximality", r.thresholds.maximality},
        {"normal_component", r.thresholds.normal_component},
        {"weak_equation", r.thresholds.weak_equation},
        {"continuity_variation", r.thresholds.continuity_variation},
        {"jump_alignment", r.thresholds.jump_alignment},
        {"structure_time", r.thresholds.structure_time}}},
      {"pass",
       {{"transversality", r.transversality_pass},
        {"maximality", r.maximality_pass},
        {"normal_component", r.normal_component_pass},
        {"weak_equation", r.weak_equation_pass},
        {"pointing", r.pointing_pass},
        {"structure", r.structure_pass},
        {"all", r.all_pass}}}};
  return doc.dump(2) + "\n";
}

std::string pmp_report_summary(const PMPReport& r) {
  auto line = [](bool pass, const std::string& name, const std::string& detail) {
    return std::string(pass ? "PASS" : "FAIL") + "  " + name +
           (detail.empty() ? "" : " (" + detail + ")") + "\n";
  };
  std::string out;
  out += line(r.pointing_pass, "pointing",
              std::string("verdict ") + to_string(r.pointing.verdict) +
                  (r.pointing.vacuous ? ", vacuous" : "") + ", margin " +
                  format_double(r.pointing.margin));
  out += line(r.transversality_pass, "transversality",
              "residual " + format_double(r.transversality_residual));
  out += line(r.maximality_pass, "maximality",
              "residual " + format_double(r.maximality_residual));
  out += line(r.normal_component_pass, "normal_component",
              "sup " + format_double(r.normal_component_sup));
  out += line(r.weak_equation_pass, "weak_equation",
              "max defect " + format_double(r.weak_equation_residual));
  out += line(r.structure.i_boundary_is_terminal_interval &&
                  r.structure.i_boundary_subset_zero,
              "interval_structure", "");
  out += line(r.structure.jumps_normal_only, "jumps_normal_only", "");
  out += line(r.structure.continuous_at_tbar, "continuous_at_tbar", "");
  out += line(r.all_pass, "all", "");
  return out;
}

std::string solve_report_json(const SolveReport& report,
                              const std::string& trajectory_file,
                              const std::string& adjoint_file) {
  json u_opt = json::array();
  for (int k = 0; k < report.u_opt.intervals(); ++k)
    u_opt.push_back(vec_json(report.u_opt.values.col(k)));
  json doc = {{"epsilon", report.epsilon},
              {"iterations", report.iterations},
              {"converged", report.converged},
              {"cost_history", report.cost_history},
              {"pmp_residual", report.pmp_residual},
              {"stationarity", report.stationarity},
              {"u_opt", std::move(u_opt)},
              {"files",
               {{"trajectory", trajectory_file}, {"adjoint", adjoint_file}}}};
  return doc.dump(2) + "\n";
}

std::string continuation_table_csv(const ContinuationReport& report) {
  std::string out =
      "epsilon,iterations,converged,cost,u_distance,x_sup_distance,cost_gap,"
      "pmp_residual,stationarity\n";
  for (const ContinuationRow& row : report.table) {
    out += format_double(row.epsilon);
    out += ',' + std::to_string(row.iterations);
    out += ',' + std::to_string(row.converged ? 1 : 0);
    out += ',' + format_double(row.cost);
    out += ',' + format_double(row.u_distance);
    out += ',' + format_double(row.x_sup_distance);
    out += ',' + format_double(row.cost_gap);
    out += ',' + format_double(row.pmp_residual);
    out += ',' + format_double(row.stationarity);
    out += '\n';
  }
  return out;
}

std::string limit_curves_csv(const LimitStudyReport& report) {
  if (report.curves.empty()) return "t\n";
  const int samples = static_cast<int>(report.curves.front().sample_times.size());
  const int n = static_cast<int>(report.curves.front().p_samples.rows());
  std::string out = "t";
  for (const LimitCurve& curve : report.curves)
    for (int i = 1; i <= n; ++i)
      out += ",p_" + std::to_string(i) + "_eps" + format_double(curve.epsilon);
  out += '\n';
  for (int s = 0; s < samples; ++s) {
    out += format_double(report.curves.front().sample_times[s]);
    for (const LimitCurve& curve : report.curves)
      for (int i = 0; i < n; ++i)
        out += ',' + format_double(curve.p_samples(i, s));
    out += '\n';
  }
  return out;
}

}  // namespace sweep
