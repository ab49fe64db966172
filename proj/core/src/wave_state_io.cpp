#include "vorwave/wave_state_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

void put(std::ostream& os, double d) {
  const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(d));
  char buf[8];
  std::memcpy(buf, &bits, 8);
  os.write(buf, 8);
}

double get(std::istream& is) {
  char buf[8];
  if (!is.read(buf, 8)) throw DomainError("wave state payload is truncated");
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  return std::bit_cast<double>(to_little(bits));
}

std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw DomainError("non-numeric CSV cell in wave state: '" + cell + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string to_string(LateralClosure c) {
  return c == LateralClosure::even_half_strip ? "even_half_strip" : "free_full_strip";
}

LateralClosure closure_from_string(const std::string& s) {
  if (s == "even_half_strip") return LateralClosure::even_half_strip;
  if (s == "free_full_strip") return LateralClosure::free_full_strip;
  throw DomainError("unknown lateral closure '" + s + "'");
}

void write_wave_state(const std::filesystem::path& path, const WaveState& state,
                      const Vorticity& vorticity, Payload payload) {
  const Grid& g = state.grid;
  if (state.phi.rows() != static_cast<Eigen::Index>(g.nx) ||
      state.phi.cols() != static_cast<Eigen::Index>(g.ny) ||
      state.w.size() != static_cast<Eigen::Index>(g.nx))
    throw DomainError("state arrays do not match the grid");
  nlohmann::json header = {
      {"format", "vorwave-state"},
      {"version", 1},
      {"L", g.L},
      {"nx", g.nx},
      {"ny", g.ny},
      {"closure", to_string(g.closure)},
      {"alpha", state.alpha},
      {"gamma_spec", to_json(vorticity)},
      {"payload", payload == Payload::binary ? "binary" : "csv"},
      {"byte_order", "little"},
      {"layout", "phi[ny][nx] then w[nx]"},
  };
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open '" + path.string() + "' for writing");
  os << header.dump() << '\n';
  if (payload == Payload::binary) {
    for (Eigen::Index j = 0; j < state.phi.cols(); ++j)
      for (Eigen::Index i = 0; i < state.phi.rows(); ++i) put(os, state.phi(i, j));
    for (Eigen::Index i = 0; i < state.w.size(); ++i) put(os, state.w(i));
  } else {
    char buf[32];
    auto row = [&](auto&& value, Eigen::Index n) {
      for (Eigen::Index i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", value(i));
        os << (i ? "," : "") << buf;
      }
      os << '\n';
    };
    for (Eigen::Index j = 0; j < state.phi.cols(); ++j)
      row([&](Eigen::Index i) { return state.phi(i, j); }, state.phi.rows());
    row([&](Eigen::Index i) { return state.w(i); }, state.w.size());
  }
  if (!os) throw DomainError("failed writing '" + path.string() + "'");
}

WaveStateFile read_wave_state(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(is, line)) throw DomainError("wave state file is empty");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("wave state header is not JSON: ") + e.what());
  }
  WaveStateFile f{WaveState{}, Vorticity::constant(0.0)};
  try {
    f.state.grid.L = h.at("L").get<double>();
    f.state.grid.nx = h.at("nx").get<std::size_t>();
    f.state.grid.ny = h.at("ny").get<std::size_t>();
    f.state.grid.closure = closure_from_string(h.at("closure").get<std::string>());
    f.state.alpha = h.at("alpha").get<double>();
    f.vorticity = vorticity_from_json(h.at("gamma_spec"));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("wave state header: ") + e.what());
  }
  f.state.grid.validate();
  const auto nx = static_cast<Eigen::Index>(f.state.grid.nx);
  const auto ny = static_cast<Eigen::Index>(f.state.grid.ny);
  f.state.phi.resize(nx, ny);
  f.state.w.resize(nx);
  const std::string payload = h.value("payload", "binary");
  if (payload == "binary") {
    if (h.value("byte_order", "little") != "little") throw DomainError("unsupported byte order");
    for (Eigen::Index j = 0; j < ny; ++j)
      for (Eigen::Index i = 0; i < nx; ++i) f.state.phi(i, j) = get(is);
    for (Eigen::Index i = 0; i < nx; ++i) f.state.w(i) = get(is);
  } else if (payload == "csv") {
    for (Eigen::Index j = 0; j <= ny; ++j) {
      if (!std::getline(is, line)) throw DomainError("wave state CSV payload is truncated");
      const std::vector<double> v = parse_csv_line(line);
      if (static_cast<Eigen::Index>(v.size()) != nx) throw DomainError("wave state CSV row has wrong length");
      for (Eigen::Index i = 0; i < nx; ++i) (j < ny ? f.state.phi(i, j) : f.state.w(i)) = v[static_cast<std::size_t>(i)];
    }
  } else {
    throw DomainError("unknown payload '" + payload + "'");
  }
  return f;
}

}  // namespace vorwave
