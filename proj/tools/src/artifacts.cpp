#include "artifacts.hpp"

#include <cstdio>
#include <fstream>

#include "vorwave/errors.hpp"

namespace vorwave::cli {

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw DomainError("CSV header and columns disagree");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw DomainError("CSV columns have different lengths");
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write '" + path.string() + "'");
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  char buf[32];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", columns[k][r]);
      os << (k ? "," : "") << buf;
    }
    os << '\n';
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write '" + path.string() + "'");
  os << j.dump(2) << '\n';
}

nlohmann::json monitors_to_json(const Monitors& m) {
  return {{"sigma_surface", m.sigma_surface}, {"grad_eta_min", m.grad_eta_min},
          {"grad_eta_max", m.grad_eta_max},   {"alpha", m.alpha},
          {"alpha_gap", m.alpha_gap},         {"froude", m.froude},
          {"crest", m.crest},                 {"stagnation_margin", m.stagnation_margin}};
}

void write_branch_table(const std::filesystem::path& path, const Branch& branch) {
  std::vector<std::vector<double>> cols(13);
  for (std::size_t k = 0; k < branch.points.size(); ++k) {
    const BranchPoint& p = branch.points[k];
    const Monitors& m = p.monitors;
    const double values[] = {static_cast<double>(k), p.s, m.alpha, m.froude, m.crest,
                             m.sigma_surface, m.grad_eta_min, m.grad_eta_max, m.alpha_gap,
                             m.stagnation_margin, static_cast<double>(p.iterations), p.residual,
                             p.nodal_ok ? (*p.nodal_ok ? 1.0 : 0.0) : -1.0};
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(values[c]);
  }
  write_csv(path,
            {"index", "s", "alpha", "froude", "crest", "sigma_surface", "grad_eta_min",
             "grad_eta_max", "alpha_gap", "stagnation_margin", "iterations", "residual",
             "nodal_ok"},
            cols);
}

nlohmann::json report_to_json(const DiagnosticsReport& r) {
  nlohmann::json nodal = {{"ok", r.nodal.ok},
                          {"trivial", r.nodal.trivial},
                          {"checked", r.nodal.checked},
                          {"v_ok", r.nodal.v_ok}};
  if (r.nodal.first_violation) {
    nodal["first_violation"] = {r.nodal.first_violation->first, r.nodal.first_violation->second};
    nodal["violation_value"] = r.nodal.violation_value;
  }
  nlohmann::json conj = {{"found", r.conjugate.found}};
  if (r.conjugate.found) {
    conj["d_star"] = r.conjugate.d_star;
    conj["S_gap"] = r.conjugate.s_gap;
    conj["S_gap_closed_form"] = r.conjugate.s_gap_closed_form;
    conj["Qhat_convexity_ok"] = r.conjugate.convexity_ok;
  } else {
    conj["message"] = r.conjugate.message;
  }
  return {{"flow_force_profile", {{"x", r.flow_force.x}, {"S", r.flow_force.s}}},
          {"flow_force_drift", r.flow_force.drift},
          {"bernoulli_residual", r.bernoulli.residual},
          {"stagnation_margin", r.bernoulli.stagnation_margin},
          {"nodal", nodal},
          {"overhang", r.surface.overhang},
          {"min_xi_x", r.surface.min_xi_x},
          {"surface_arclength_ok", r.surface.arclength_ok},
          {"sigma_surface", r.sigma_surface},
          {"sigma_domain", r.sigma_domain},
          {"far_field_leakage", r.far_field_leakage},
          {"conjugate", conj}};
}

}  // namespace vorwave::cli
