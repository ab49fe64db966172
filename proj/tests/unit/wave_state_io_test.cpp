#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "vorwave/errors.hpp"
#include "vorwave/wave_state_io.hpp"

namespace vorwave {
namespace {

namespace fs = std::filesystem;

WaveState sample_state() {
  Grid g{12.0, 9, 6, LateralClosure::free_full_strip};
  WaveState s = WaveState::trivial(g, 0.731);
  for (Eigen::Index i = 0; i < s.phi.rows(); ++i) {
    s.w(i) = 0.1 / (1.0 + i) + 1e-17;
    for (Eigen::Index j = 1; j + 1 < s.phi.cols(); ++j) s.phi(i, j) = std::sin(0.3 * i + j) / 3.0;
  }
  return s;
}

class WaveStateIo : public ::testing::TestWithParam<Payload> {};

TEST_P(WaveStateIo, RoundTripIsBitExact) {
  const auto path = fs::temp_directory_path() / "vorwave_io_test.state";
  const WaveState s = sample_state();
  write_wave_state(path, s, Vorticity::polynomial({0.5, -1.0}), GetParam());
  const auto back = read_wave_state(path);
  EXPECT_EQ(back.state.grid, s.grid);
  EXPECT_EQ(back.state.alpha, s.alpha);
  EXPECT_TRUE((back.state.phi == s.phi).all());
  EXPECT_TRUE((back.state.w == s.w).all());
  EXPECT_EQ(back.vorticity.kind_name(), "polynomial");
  EXPECT_DOUBLE_EQ(back.vorticity.eval(0.5), 0.0);
  fs::remove(path);
}

INSTANTIATE_TEST_SUITE_P(Payloads, WaveStateIo, ::testing::Values(Payload::binary, Payload::csv));

TEST(WaveStateIoErrors, MalformedFiles) {
  const auto path = fs::temp_directory_path() / "vorwave_io_bad.state";
  {
    std::ofstream(path) << "not json\n";
  }
  EXPECT_THROW((void)read_wave_state(path), DomainError);
  write_wave_state(path, sample_state(), Vorticity::constant(0.0), Payload::csv);
  fs::resize_file(path, fs::file_size(path) - 40);
  EXPECT_THROW((void)read_wave_state(path), DomainError);
  fs::remove(path);
  EXPECT_THROW((void)read_wave_state(path), DomainError);
}

TEST(WaveStateIoErrors, ClosureNames) {
  for (auto c : {LateralClosure::even_half_strip, LateralClosure::free_full_strip})
    EXPECT_EQ(closure_from_string(to_string(c)), c);
  EXPECT_THROW((void)closure_from_string("periodic"), DomainError);
}

}  // namespace
}  // namespace vorwave
