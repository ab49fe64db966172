#pragma once

#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "vorwave/cm_reduction.hpp"
#include "vorwave_cli/config.hpp"

namespace vorwave::cli {

using Path = std::filesystem::path;

nlohmann::json cmd_laminar(const RunConfig& c, const std::optional<Path>& csv);
nlohmann::json cmd_critical(const RunConfig& c, std::optional<double> alpha);
nlohmann::json cmd_eigen(const RunConfig& c, std::optional<double> alpha_tilde,
                         const std::optional<Path>& csv);
/// Profiles y, theta, g, k go to `csv`.
nlohmann::json cmd_cm_coeffs(const RunConfig& c, const std::optional<Path>& csv);
nlohmann::json cmd_seed(const RunConfig& c, const Path& out);
/// Vorticity and grid come from the state file.
nlohmann::json cmd_solve(const RunConfig& c, const Path& state, const Path& out);
nlohmann::json cmd_continue(const RunConfig& c, const Path& seed, const Path& out_dir);
/// Without `type` the crest sign picks the expected nodal pattern.
nlohmann::json cmd_diagnose(const RunConfig& c, const Path& state, std::optional<WaveType> type,
                            const std::optional<Path>& csv);

struct ScanOptions {
  int degree = 2;
  double range = 2.0;
  int steps = 5;
  std::size_t ny = 1025;
};

/// Grid search over polynomial vorticities for a positive M0.
nlohmann::json cmd_scan(const RunConfig& c, const ScanOptions& options);

/// Adds a "warnings" array when the vorticity is tabulated (smoothness cannot be verified).
void add_vorticity_warnings(nlohmann::json& j, const Vorticity& v);

/// 2 usage/domain, 3 model, 4 numeric, 1 anything else.
int exit_code_for(const std::exception& e);
nlohmann::json error_json(const std::exception& e);

}  // namespace vorwave::cli
