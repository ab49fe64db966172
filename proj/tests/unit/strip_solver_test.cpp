#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "vorwave/errors.hpp"
#include "vorwave/kernel_analysis.hpp"
#include "vorwave/seed.hpp"
#include "vorwave/strip_solver.hpp"

namespace vorwave {
namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

double harmonic_error(const LaminarFlow& flow, std::size_t nx, std::size_t ny) {
  Grid g{10.0, nx, ny, LateralClosure::even_half_strip};
  StripSolver s(g, flow);
  // vanishes at x = L and is even about x = 0
  const double k = 1.5 * std::numbers::pi / g.L;
  Eigen::ArrayXd w(ix(nx));
  for (std::size_t i = 0; i < nx; ++i) w(ix(i)) = std::cos(k * g.x(i));
  const Field z = s.harmonic_extension(w);
  double err = 0.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      err = std::max(err, std::abs(z(ix(i), ix(j)) -
                                   std::cos(k * g.x(i)) * std::sinh(k * g.y(j)) / std::sinh(k)));
  return err;
}

TEST(StripSolver, HarmonicExtensionSecondOrder) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  const double e1 = harmonic_error(flow, 41, 9);
  const double e2 = harmonic_error(flow, 81, 17);
  EXPECT_LT(e2, 1e-3);
  EXPECT_GE(std::log2(e1 / e2), 1.8);
}

TEST(StripSolver, FullStripHarmonicExtensionOfAffineData) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  Grid g{10.0, 41, 11, LateralClosure::free_full_strip};
  StripSolver s(g, flow);
  Eigen::ArrayXd w(41);
  for (std::size_t i = 0; i < 41; ++i) w(ix(i)) = 0.3 + 0.05 * g.x(i);
  const Field z = s.harmonic_extension(w);
  for (std::size_t i = 0; i < 41; ++i)
    for (std::size_t j = 0; j < 11; ++j)
      EXPECT_NEAR(z(ix(i), ix(j)), w(ix(i)) * g.y(j), 1e-12);
}

TEST(StripSolver, TrivialStateIsExact) {
  for (const auto& v : {Vorticity::constant(0.0), Vorticity::constant(-1.0), Vorticity::affine(1.0)}) {
    const auto flow = solve_laminar(v);
    Grid g{20.0, 81, 21, LateralClosure::even_half_strip};
    StripSolver s(g, flow);
    for (double a : {0.1, 0.5, 0.9 * flow.alpha_cr})
      EXPECT_LE(s.residual(WaveState::trivial(g, a)).norm(), 1e-12);
  }
}

struct SmallWave : ::testing::Test {
  LaminarFlow flow = solve_laminar(Vorticity::constant(0.0));
  EigenSolution eig = principal_eigen(flow, flow.alpha_tilde_cr);
  CMCoefficients cm = compute_coefficients(flow, eig);
  Grid grid{20.0, 61, 13, LateralClosure::even_half_strip};
  StripSolver solver{grid, flow};
  WaveState seed = small_amplitude_seed(solver, eig, cm, 0.05);
};

TEST_F(SmallWave, JacobianMatchesFiniteDifferences) {
  const auto check = check_jacobian(solver, seed, 5, 11);
  EXPECT_LE(check.max_relative_error, 1e-6);
}

TEST_F(SmallWave, NewtonDirectionSolvesLinearSystem) {
  const Residual r = solver.residual(seed);
  const NewtonDirection d = solver.newton_direction(seed, r);
  const Residual jd = solver.jacobian_apply(seed, d.phi, d.w);
  const Eigen::VectorXd lhs = solver.pack(jd) + solver.pack(r);
  EXPECT_LE(lhs.lpNorm<Eigen::Infinity>(), 1e-8 * std::max(1.0, r.norm()));
}

TEST_F(SmallWave, ParameterSensitivityIsConsistent) {
  // J d + dF/dalpha = 0
  const NewtonDirection d = solver.parameter_sensitivity(seed);
  EXPECT_DOUBLE_EQ(d.alpha, 1.0);
  const Residual jd = solver.jacobian_apply(seed, d.phi, d.w, d.alpha);
  EXPECT_LE(solver.pack(jd).lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST_F(SmallWave, NewtonConvergesQuadratically) {
  WaveState start = seed;
  start.w *= 2.0;
  start.phi *= 2.0;
  const auto rep = solver.newton_solve(start);
  EXPECT_LE(rep.residual, 1e-10);
  EXPECT_LE(rep.iterations, 10);
  ASSERT_GE(rep.history.size(), 3u);
  EXPECT_GT(rep.state.crest(), 0.01);
}

TEST_F(SmallWave, GoodUnknownRoundTrip) {
  Field theta = Field::Zero(ix(grid.nx), ix(grid.ny));
  for (std::size_t i = 0; i + 1 < grid.nx; ++i)
    for (std::size_t j = 1; j < grid.ny; ++j)
      theta(ix(i), ix(j)) = std::exp(-0.1 * grid.x(i) * grid.x(i)) * std::sin(2.0 * grid.y(j));
  const auto [phi, w] = solver.t_map(theta);
  EXPECT_LE((solver.t_map_inverse(phi, w) - theta).abs().maxCoeff(), 1e-12);
  EXPECT_EQ(phi.col(ix(grid.ny - 1)).abs().maxCoeff(), 0.0);
}

TEST_F(SmallWave, PackRoundTrip) {
  const Eigen::VectorXd x = solver.pack(seed.phi, seed.w);
  EXPECT_EQ(static_cast<std::size_t>(x.size()), solver.unknowns());
  const auto [phi, w] = solver.unpack(x);
  EXPECT_EQ((phi - seed.phi).abs().maxCoeff(), 0.0);
  EXPECT_EQ((w - seed.w).abs().maxCoeff(), 0.0);
  EXPECT_THROW((void)solver.unpack(Eigen::VectorXd::Zero(3)), DomainError);
}

TEST_F(SmallWave, RejectsForeignStates) {
  Grid other = grid;
  other.nx = 41;
  EXPECT_THROW((void)solver.residual(WaveState::trivial(other, 0.5)), DomainError);
  WaveState bad = seed;
  bad.w(0) = std::nan("");
  EXPECT_THROW((void)solver.residual(bad), DomainError);
}

TEST_F(SmallWave, InadmissibleStartRejected) {
  WaveState s = seed;
  s.w(0) = 10.0;  // mu - 2 alpha w < 0 at the crest
  EXPECT_THROW((void)solver.newton_solve(s), AdmissibilityError);
}

TEST(StripSolver, IdentityDefectSecondOrder) {
  const auto flow = solve_laminar(Vorticity::affine(1.0));
  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    const std::size_t m = std::size_t{1} << level;
    Grid g{20.0, 40 * m + 1, 10 * m + 1, LateralClosure::even_half_strip};
    StripSolver s(g, flow);
    Eigen::ArrayXd top(ix(g.nx));
    for (std::size_t i = 0; i < g.nx; ++i) top(ix(i)) = std::exp(-0.05 * g.x(i) * g.x(i));
    top(ix(g.nx - 1)) = 0.0;
    const double d = s.transformation_identity_defect(top).abs().maxCoeff();
    if (level > 0) {
      EXPECT_GE(std::log2(prev / d), 1.8);
    }
    prev = d;
  }
}

TEST(Grid, Validation) {
  EXPECT_THROW((Grid{5.0, 21, 11, LateralClosure::even_half_strip}.validate()), DomainError);
  EXPECT_THROW((Grid{20.0, 4, 11, LateralClosure::even_half_strip}.validate()), DomainError);
  const Grid g{20.0, 21, 11, LateralClosure::free_full_strip};
  EXPECT_DOUBLE_EQ(g.x(0), -20.0);
  EXPECT_EQ(g.crest_column(), 10u);
  EXPECT_EQ(g.refined().nx, 41u);
  EXPECT_DOUBLE_EQ(g.refined().hx(), g.hx() / 2);
}

}  // namespace
}  // namespace vorwave
