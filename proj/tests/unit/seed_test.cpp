#include <cmath>

#include <gtest/gtest.h>

#include "vorwave/errors.hpp"
#include "vorwave/seed.hpp"

namespace vorwave {
namespace {

struct Irrotational : ::testing::Test {
  LaminarFlow flow = solve_laminar(Vorticity::constant(0.0));
  EigenSolution eig = principal_eigen(flow, flow.alpha_tilde_cr);
  CMCoefficients cm = compute_coefficients(flow, eig);
};

TEST_F(Irrotational, ProfileScales) {
  const auto p = seed_profile(cm, 0.02);
  EXPECT_NEAR(p.amplitude, -0.5 * 0.02, 1e-8);
  EXPECT_NEAR(p.decay, 0.5 * std::sqrt(3.0 * 0.02), 1e-8);
  EXPECT_THROW((void)seed_profile(cm, 0.0), DomainError);
  EXPECT_THROW((void)seed_profile(cm, 0.2), DomainError);
}

TEST_F(Irrotational, SeedState) {
  Grid grid;
  StripSolver solver(grid, flow);
  const double eps = 0.02;
  const auto s = small_amplitude_seed(solver, eig, cm, eps);
  EXPECT_NEAR(s.alpha, 1.0 - eps, 1e-10);
  const double k = 0.5 * std::sqrt(3.0 * eps);
  const double tail = 1.0 / std::pow(std::cosh(k * grid.L), 2);
  EXPECT_NEAR(s.crest(), 0.5 * eps * (1.0 - tail), 1e-8);
  EXPECT_EQ(s.w(static_cast<Eigen::Index>(grid.nx - 1)), 0.0);
  // sech^2 shape on the surface
  const auto i = static_cast<Eigen::Index>(grid.nx / 4);
  const double x = grid.x(static_cast<std::size_t>(i));
  EXPECT_NEAR(s.w(i), 0.5 * eps * (1.0 / std::pow(std::cosh(k * x), 2) - tail), 1e-8);
  // monotone away from the crest
  for (Eigen::Index j = 1; j < s.w.size(); ++j) EXPECT_LE(s.w(j), s.w(j - 1));
}

TEST_F(Irrotational, OverloadAgrees) {
  Grid grid{20.0, 81, 17, LateralClosure::even_half_strip};
  StripSolver solver(grid, flow);
  const auto a = small_amplitude_seed(solver, eig, cm, 0.03);
  const auto b = small_amplitude_seed(flow, eig, cm, 0.03, grid);
  EXPECT_LT((a.w - b.w).abs().maxCoeff(), 1e-15);
  EXPECT_LT((a.phi - b.phi).abs().maxCoeff(), 1e-15);
}

TEST_F(Irrotational, ResidualShrinksWithEpsilon) {
  Grid grid;
  StripSolver solver(grid, flow);
  const double r1 = solver.residual(small_amplitude_seed(solver, eig, cm, 0.04)).norm();
  const double r2 = solver.residual(small_amplitude_seed(solver, eig, cm, 0.02)).norm();
  EXPECT_GE(std::log2(r1 / r2), 1.5);
}

TEST(Seed, EpsilonBelowCriticalValue) {
  // constant(-1.95): alpha_cr = 1 - 1.95^2/4 < 0.1
  const auto flow = solve_laminar(Vorticity::constant(-1.95));
  const auto eig = principal_eigen(flow, flow.alpha_tilde_cr);
  const auto cm = compute_coefficients(flow, eig);
  Grid grid{10.0, 21, 9, LateralClosure::even_half_strip};
  StripSolver solver(grid, flow);
  EXPECT_THROW((void)small_amplitude_seed(solver, eig, cm, 0.09), DomainError);
}

}  // namespace
}  // namespace vorwave
