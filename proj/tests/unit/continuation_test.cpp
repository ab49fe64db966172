#include <cmath>

#include <gtest/gtest.h>

#include "vorwave/continuation.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/seed.hpp"

namespace vorwave {
namespace {

struct Branching : ::testing::Test {
  LaminarFlow flow = solve_laminar(Vorticity::constant(0.0));
  EigenSolution eig = principal_eigen(flow, flow.alpha_tilde_cr);
  CMCoefficients cm = compute_coefficients(flow, eig);
  Grid grid{30.0, 121, 21, LateralClosure::even_half_strip};
  StripSolver solver{grid, flow};
};

TEST_F(Branching, MonitorsOnTrivialState) {
  const auto m = compute_monitors(solver, WaveState::trivial(grid, 0.6));
  EXPECT_NEAR(m.sigma_surface, 1.0, 1e-12);
  EXPECT_NEAR(m.grad_eta_min, 1.0, 1e-12);
  EXPECT_NEAR(m.alpha_gap, flow.alpha_cr - 0.6, 1e-12);
  EXPECT_NEAR(m.froude, std::sqrt(1.0 / 0.6), 1e-12);
  EXPECT_EQ(m.crest, 0.0);
}

TEST_F(Branching, AnchorHoldsCrest) {
  const auto seed = small_amplitude_seed(solver, eig, cm, 0.02);
  const auto rep = anchor_crest(solver, seed);
  EXPECT_LE(rep.residual, 1e-10);
  EXPECT_NEAR(rep.state.crest(), seed.crest(), 1e-12);
  EXPECT_LT(rep.state.alpha, flow.alpha_cr);
}

TEST_F(Branching, FirstStepsGrowTheWave) {
  ContinuationConfig cfg;
  cfg.max_steps = 4;
  cfg.step0 = 0.005;
  cfg.nodal_type = WaveType::elevation;
  const auto seed = small_amplitude_seed(solver, eig, cm, 0.02);
  std::size_t calls = 0;
  const auto br = extend_branch(solver, seed, cfg, [&](const BranchPoint&, std::size_t) { ++calls; });
  ASSERT_EQ(br.points.size(), 5u);
  EXPECT_EQ(calls, 5u);
  EXPECT_EQ(br.termination.reason, "max steps reached");
  for (std::size_t k = 1; k < br.points.size(); ++k) {
    EXPECT_GT(br.points[k].state.crest(), br.points[k - 1].state.crest());
    EXPECT_LT(br.points[k].state.alpha, br.points[k - 1].state.alpha);
    EXPECT_GT(br.points[k].s, br.points[k - 1].s);
    EXPECT_LE(br.points[k].residual, 1e-10);
    EXPECT_TRUE(br.points[k].nodal_ok.value_or(false));
  }
}

TEST_F(Branching, TrivialBranchRunsToVanishingGravity) {
  ContinuationConfig cfg;
  cfg.step0 = 0.05;
  cfg.step_max = 0.2;
  cfg.growth = 2.0;
  const auto br = extend_branch(solver, WaveState::trivial(grid, 0.5), cfg);
  EXPECT_EQ(br.termination.reason, "vanishing gravity");
  EXPECT_EQ(br.termination.monitor, "alpha");
  EXPECT_LT(br.points.back().state.alpha, 1e-3);
  EXPECT_LT(br.points.back().state.w.abs().maxCoeff(), 1e-10);
}

TEST_F(Branching, ForcedStagnationStop) {
  ContinuationConfig cfg;
  cfg.thresholds.sigma_surface = 0.99;
  cfg.step0 = 0.005;
  const auto seed = small_amplitude_seed(solver, eig, cm, 0.02);
  const auto br = extend_branch(solver, seed, cfg);
  EXPECT_EQ(br.termination.reason, "stagnation approach");
  EXPECT_EQ(br.termination.monitor, "sigma_surface");
  EXPECT_LT(br.termination.value, 0.99);
}

TEST_F(Branching, RejectsBadConfig) {
  ContinuationConfig cfg;
  cfg.step0 = -1.0;
  EXPECT_THROW((void)extend_branch(solver, WaveState::trivial(grid, 0.5), cfg), DomainError);
}

}  // namespace
}  // namespace vorwave
