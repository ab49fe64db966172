#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "vorwave/errors.hpp"
#include "vorwave/laminar.hpp"
#include "vorwave/sturm.hpp"

namespace vorwave {
namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

TEST(Sturm, ConstantVorticityLinearMode) {
  for (double kappa : {0.0, -1.0, 1.0}) {
    const auto flow = solve_laminar(Vorticity::constant(kappa));
    const auto eig = principal_eigen(flow, 1.0);
    EXPECT_NEAR(eig.nu0, 0.0, 1e-6);
    for (std::size_t k = 0; k < eig.size(); k += 128) EXPECT_NEAR(eig.phi0[k], eig.y[k], 1e-6);
    EXPECT_NEAR(eig.norm_l2_sq, 1.0 / 3.0, 1e-6);
  }
}

TEST(Sturm, AffineSineMode) {
  const auto flow = solve_laminar(Vorticity::affine(1.0));
  const auto eig = principal_eigen(flow, std::cos(1.0) / std::sin(1.0));
  EXPECT_NEAR(eig.nu0, 0.0, 1e-6);
  for (std::size_t k = 0; k < eig.size(); k += 128)
    EXPECT_NEAR(eig.phi0[k], std::sin(eig.y[k]) / std::sin(1.0), 1e-6);
}

TEST(Sturm, DirichletNeumannLimit) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  const auto eig = principal_eigen(flow, 0.0);
  const double pi = std::numbers::pi;
  EXPECT_NEAR(eig.nu0, pi * pi / 4.0, 1e-5);
  for (std::size_t k = 0; k < eig.size(); k += 128)
    EXPECT_NEAR(eig.phi0[k], std::sin(pi * eig.y[k] / 2.0), 1e-6);
}

TEST(Sturm, LiouvilleMatchesEigen) {
  for (const auto& v : {Vorticity::constant(0.0), Vorticity::constant(-1.0), Vorticity::affine(1.0),
                        Vorticity::polynomial({0.3, -0.6, 0.9})}) {
    const auto flow = solve_laminar(v);
    const auto eig = principal_eigen(flow, flow.alpha_tilde_cr);
    EXPECT_NEAR(eig.nu0, 0.0, 1e-6);
    EXPECT_LE(sup_diff(liouville_zero_mode(flow), eig.phi0), 1e-6) << v.kind_name();
  }
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  EXPECT_LE(sup_diff(liouville_zero_mode(flow), flow.y), 1e-12);
}

TEST(Sturm, PositiveEigenfunction) {
  const auto flow = solve_laminar(Vorticity::polynomial({-0.5, 1.0, 0.5}));
  const auto eig = principal_eigen(flow, flow.alpha_tilde_cr - 0.7);
  EXPECT_EQ(eig.phi0.front(), 0.0);
  EXPECT_DOUBLE_EQ(eig.phi0.back(), 1.0);
  for (std::size_t k = 1; k < eig.size(); ++k) ASSERT_GT(eig.phi0[k], 0.0);
}

TEST(Sturm, EigenvalueDecreasesInRobinCoefficient) {
  const auto flow = solve_laminar(Vorticity::affine(1.0));
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 10; ++k) {
    const double at = flow.alpha_tilde_cr - 1.0 + 0.2 * k;
    const double nu = principal_eigen(flow, at, 1025).nu0;
    EXPECT_LT(nu, prev);
    if (at < flow.alpha_tilde_cr - 1e-9) {
      EXPECT_GT(nu, 0.0);
    }
    prev = nu;
  }
}

TEST(Sturm, RayleighQuotient) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  const double pi = std::numbers::pi;
  std::vector<double> s(flow.size()), lin(flow.size());
  for (std::size_t k = 0; k < flow.size(); ++k) {
    s[k] = std::sin(pi * flow.y[k] / 2.0);
    lin[k] = flow.y[k];
  }
  EXPECT_NEAR(rayleigh(flow, 0.0, s), pi * pi / 4.0, 1e-5);
  EXPECT_NEAR(rayleigh(flow, 0.0, lin), 3.0, 1e-6);

  const auto eig = principal_eigen(flow, 0.3, flow.size());
  EXPECT_NEAR(rayleigh(flow, 0.3, eig.phi0), eig.nu0, 1e-8);
  EXPECT_GE(rayleigh(flow, 0.3, lin), eig.nu0 - 1e-8);
  EXPECT_THROW((void)rayleigh(flow, 0.0, std::vector<double>(flow.size(), 0.0)), DomainError);
}

TEST(Sturm, GridInterpolation) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  const auto eig = principal_eigen(flow, 1.0);
  const auto g = phi0_on_grid(eig, 11);
  ASSERT_EQ(g.size(), 11u);
  for (std::size_t j = 0; j < 11; ++j) EXPECT_NEAR(g[j], j / 10.0, 1e-6);
}

}  // namespace
}  // namespace vorwave
