#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "vorwave/continuation.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/vorticity.hpp"
#include "vorwave/wave_state_io.hpp"

namespace vorwave::cli {

/// Schema violation in a config file or command line; maps to exit code 2.
class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct Tolerances {
  double bvp_tol = 1e-12;
  double newton_tol = 1e-10;
  int max_iter = 20;
};

struct RunConfig {
  std::optional<Vorticity> vorticity;
  Grid grid;
  Tolerances tolerances;
  double epsilon = 0.02;
  std::size_t laminar_ny = 4097;
  std::size_t eigen_ny = 4097;
  ContinuationConfig continuation;
  std::size_t stride = 10;  ///< WaveState file every stride-th branch point
  std::size_t flow_force_stride = 5;
  int jacobian_directions = 3;
  std::uint64_t rng_seed = 12345;
  Payload payload = Payload::binary;
  std::filesystem::path output_dir = "vorwave_out";
};

/// Defaults used when no config is given.
RunConfig default_config();

nlohmann::json to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys and bad values throw UsageError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Applies "a.b.c=value"; value is parsed as JSON, falling back to a string.
void apply_override(RunConfig& c, const std::string& assignment);

/// The vorticity or a UsageError naming the missing field.
const Vorticity& require_vorticity(const RunConfig& c);

}  // namespace vorwave::cli
