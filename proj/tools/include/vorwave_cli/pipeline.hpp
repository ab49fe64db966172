#pragma once

#include <nlohmann/json.hpp>

#include "vorwave_cli/config.hpp"

namespace vorwave::cli {

/// laminar, critical, eigen, cm-coeffs, seed, solve, continue, diagnose; artifacts go to
/// config.output_dir. Returns the run summary (also written as summary.json).
nlohmann::json run_pipeline(const RunConfig& config);

}  // namespace vorwave::cli
