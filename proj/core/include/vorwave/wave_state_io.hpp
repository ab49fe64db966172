#pragma once

#include <filesystem>
#include <string>

#include "vorwave/grid.hpp"
#include "vorwave/vorticity.hpp"

namespace vorwave {

enum class Payload { binary, csv };

struct WaveStateFile {
  WaveState state;
  Vorticity vorticity;
};

/// One JSON header line, then phi as ny rows of nx values followed by w.
/// Binary payloads are little-endian float64; CSV uses 17 significant digits.
void write_wave_state(const std::filesystem::path& path, const WaveState& state,
                      const Vorticity& vorticity, Payload payload = Payload::binary);

/// Throws DomainError on a malformed file.
WaveStateFile read_wave_state(const std::filesystem::path& path);

std::string to_string(LateralClosure c);
LateralClosure closure_from_string(const std::string& s);

}  // namespace vorwave
