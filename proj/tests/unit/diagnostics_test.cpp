#include <cmath>

#include <gtest/gtest.h>

#include "vorwave/diagnostics.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/seed.hpp"

namespace vorwave {
namespace {

TEST(Diagnostics, LaminarFlowForce) {
  Grid g{20.0, 41, 21, LateralClosure::even_half_strip};
  // S = int 1/2 psi_y^2 + alpha (1 - y) + G(psi) - G(1) + mu/2 dy
  const double a = 0.6;
  {
    StripSolver s(g, solve_laminar(Vorticity::constant(0.0)));
    const auto p = flow_force_profile(s, WaveState::trivial(g, a));
    EXPECT_NEAR(p.s.front(), 1.0 + a / 2, 1e-10);
    EXPECT_LT(p.drift, 1e-12);
  }
  {
    StripSolver s(g, solve_laminar(Vorticity::constant(-1.0)));
    EXPECT_NEAR(flow_force(s, WaveState::trivial(g, a), 7), 2.25 + a / 2, 1e-10);
  }
}

TEST(Diagnostics, ConjugateFlowIrrotational) {
  const auto c = conjugate_flow(solve_laminar(Vorticity::constant(0.0)), 0.8);
  ASSERT_TRUE(c.found);
  const double d = (1.0 + std::sqrt(7.4)) / 3.2;
  EXPECT_NEAR(c.d_star, d, 1e-10);
  EXPECT_NEAR(c.s_gap, 0.4 * (d * d - 1.0), 1e-10);
  EXPECT_NEAR(c.s_gap_closed_form, 0.4 * (d * d - 1.0), 1e-12);
  EXPECT_TRUE(c.convexity_ok);
  EXPECT_THROW((void)conjugate_flow(solve_laminar(Vorticity::constant(0.0)), 1.2), DomainError);
}

TEST(Diagnostics, ConjugateFlowAtCriticalityIsLaminar) {
  // alpha = mu: the second root coincides with d = 1
  const auto c = conjugate_flow(1.0, 1.0);
  EXPECT_FALSE(c.found);
  EXPECT_FALSE(c.message.empty());
}

TEST(Diagnostics, SurfaceOverhangDetection) {
  const std::vector<double> x{0, 1, 2, 3, 4};
  const std::vector<double> eta{1.2, 1.1, 1.05, 1.0, 1.0};
  const auto smooth = surface_reconstruction(x, {1, 1, 1, 1, 1}, eta);
  EXPECT_FALSE(smooth.overhang);
  EXPECT_DOUBLE_EQ(smooth.xi.back(), 4.0);
  const auto folded = surface_reconstruction(x, {1, 0.5, -0.2, 0.5, 1}, eta);
  EXPECT_TRUE(folded.overhang);
  EXPECT_DOUBLE_EQ(folded.min_xi_x, -0.2);
  EXPECT_THROW((void)surface_reconstruction({0}, {1}, {1}), DomainError);
}

struct Wave : ::testing::Test {
  static void SetUpTestSuite() {
    flow = solve_laminar(Vorticity::constant(0.0));
    const auto eig = principal_eigen(flow, flow.alpha_tilde_cr);
    const auto cm = compute_coefficients(flow, eig);
    solver = std::make_unique<StripSolver>(grid, flow);
    WaveState s = small_amplitude_seed(*solver, eig, cm, 0.04);
    s.phi *= 2.0;
    s.w *= 2.0;
    wave = solver->newton_solve(s).state;
  }
  static inline LaminarFlow flow;
  static inline Grid grid{30.0, 121, 21, LateralClosure::even_half_strip};
  static inline std::unique_ptr<StripSolver> solver;
  static inline WaveState wave;
};

TEST_F(Wave, ElevationNodalPattern) {
  ASSERT_GT(wave.crest(), 0.02);
  const auto n = nodal_check(*solver, wave, WaveType::elevation);
  EXPECT_TRUE(n.ok);
  EXPECT_TRUE(n.v_ok);
  EXPECT_FALSE(n.trivial);
  EXPECT_GT(n.checked, 0u);
  const auto bad = nodal_check(*solver, wave, WaveType::depression);
  EXPECT_FALSE(bad.ok);
  ASSERT_TRUE(bad.first_violation.has_value());
}

TEST_F(Wave, TrivialStateHasNoNodalSignal) {
  const auto n = nodal_check(*solver, WaveState::trivial(grid, 0.9), WaveType::elevation);
  EXPECT_TRUE(n.trivial);
  EXPECT_EQ(n.checked, 0u);
}

TEST_F(Wave, FlowForceNearlyConstant) {
  EXPECT_LT(flow_force_profile(*solver, wave).drift, 1e-5);
}

TEST_F(Wave, BernoulliHoldsOnSurface) {
  const auto b = bernoulli_residual(*solver, wave);
  EXPECT_LT(b.residual, 1e-10);
  EXPECT_GT(b.stagnation_margin, 0.5);
}

TEST_F(Wave, DimensionalRestore) {
  const auto p = dimensional_restore(*solver, wave, 9.81, 2.0);
  EXPECT_NEAR(p.froude, std::sqrt(1.0 / wave.alpha), 1e-12);
  EXPECT_NEAR(p.wave_speed, p.froude * std::sqrt(9.81 * 2.0), 1e-12);
  EXPECT_NEAR(p.mass_flux, std::sqrt(9.81 * 8.0 / wave.alpha), 1e-12);
  EXPECT_NEAR(p.crest_height, 2.0 * wave.crest(), 1e-14);
  ASSERT_FALSE(p.eta.empty());
  EXPECT_NEAR(p.eta.front(), 2.0 * (1.0 + wave.crest()), 1e-12);
  EXPECT_THROW((void)dimensional_restore(*solver, wave, -1.0, 1.0), DomainError);
}

TEST_F(Wave, FarFieldLeakage) {
  const double leak = far_field_leakage(*solver, wave);
  EXPECT_DOUBLE_EQ(leak, std::abs(wave.w(static_cast<Eigen::Index>(grid.nx - 2))));
  EXPECT_LT(leak, 1e-3 * wave.crest());
  EXPECT_EQ(far_field_leakage(*solver, WaveState::trivial(grid, 0.5)), 0.0);
}

TEST_F(Wave, FullReport) {
  const auto r = diagnose(*solver, wave, WaveType::elevation);
  EXPECT_TRUE(r.nodal.ok);
  EXPECT_FALSE(r.surface.overhang);
  EXPECT_TRUE(r.surface.arclength_ok);
  EXPECT_TRUE(r.conjugate.found);
  EXPECT_GT(r.sigma_surface, 0.0);
  EXPECT_EQ(r.far_field_leakage, far_field_leakage(*solver, wave));
}

}  // namespace
}  // namespace vorwave
