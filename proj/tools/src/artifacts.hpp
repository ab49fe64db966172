#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vorwave/continuation.hpp"
#include "vorwave/diagnostics.hpp"

namespace vorwave::cli {

/// Column-major CSV; all columns must share a length.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

void write_branch_table(const std::filesystem::path& path, const Branch& branch);
nlohmann::json report_to_json(const DiagnosticsReport& r);
nlohmann::json monitors_to_json(const Monitors& m);

}  // namespace vorwave::cli
