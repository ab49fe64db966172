#include <cmath>

#include <gtest/gtest.h>

#include "vorwave/errors.hpp"
#include "vorwave/laminar.hpp"

namespace vorwave {
namespace {

TEST(Laminar, Irrotational) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  for (std::size_t k = 0; k < flow.size(); k += 512) EXPECT_NEAR(flow.psi[k], flow.y[k], 1e-12);
  EXPECT_NEAR(flow.psi_y_top(), 1.0, 1e-12);
  EXPECT_NEAR(flow.mu, 1.0, 1e-12);
  EXPECT_NEAR(flow.alpha_cr, 1.0, 1e-10);
  EXPECT_NEAR(flow.alpha_tilde_cr, 1.0, 1e-10);
}

TEST(Laminar, ConstantVorticityQuadratic) {
  const auto flow = solve_laminar(Vorticity::constant(-1.0));
  for (std::size_t k = 0; k < flow.size(); k += 256) {
    const double y = flow.y[k];
    EXPECT_NEAR(flow.psi[k], y * y / 2 + y / 2, 1e-10);
  }
  EXPECT_NEAR(flow.psi_y_top(), 1.5, 1e-10);
  EXPECT_NEAR(flow.mu, 2.25, 1e-10);
  EXPECT_NEAR(flow.alpha_cr, 0.75, 1e-8);
  EXPECT_NEAR(flow.alpha_tilde_cr, 1.0, 1e-8);
}

TEST(Laminar, AffineSine) {
  const auto flow = solve_laminar(Vorticity::affine(1.0));
  for (std::size_t k = 0; k < flow.size(); k += 256)
    EXPECT_NEAR(flow.psi[k], std::sin(flow.y[k]) / std::sin(1.0), 1e-10);
  const double cot1 = std::cos(1.0) / std::sin(1.0);
  EXPECT_NEAR(flow.psi_y_top(), cot1, 1e-10);
  EXPECT_NEAR(flow.alpha_tilde_cr, cot1, 1e-8);
  // 1 / int sin^2(1) / cos^2(y) dy
  EXPECT_NEAR(flow.alpha_cr, 1.0 / (std::sin(1.0) * std::sin(1.0) * std::tan(1.0)), 1e-9);
}

TEST(Laminar, CriticalIdentityAllPresets) {
  for (const auto& v : {Vorticity::constant(0.0), Vorticity::constant(-1.0), Vorticity::constant(1.0),
                        Vorticity::affine(1.0), Vorticity::polynomial({0.2, -0.5, 0.8})}) {
    const auto flow = solve_laminar(v);
    const double p = flow.psi_y_top();
    EXPECT_NEAR(flow.alpha_cr, flow.alpha_tilde_cr * p * p + v.eval(1.0) * p, 1e-10);
    EXPECT_GT(flow.min_psi_y, 0.0);
    EXPECT_NEAR(flow.psi.front(), 0.0, 1e-12);
    EXPECT_NEAR(flow.psi.back(), 1.0, 1e-10);
  }
}

TEST(Laminar, ConstantFamilyClosedForm) {
  for (double kappa : {-1.8, -1.0, -0.3, 0.5, 1.2, 1.9}) {
    const auto flow = solve_laminar(Vorticity::constant(kappa));
    EXPECT_NEAR(flow.alpha_cr, 1.0 - kappa * kappa / 4.0, 1e-8) << kappa;
  }
}

TEST(Laminar, CriticalValueConvergesFourthOrder) {
  const auto v = Vorticity::polynomial({1.0, -2.0, 1.5});
  const double fine = solve_laminar(v, 4097).alpha_cr;
  const double e1 = std::abs(solve_laminar(v, 33).alpha_cr - fine);
  const double e2 = std::abs(solve_laminar(v, 65).alpha_cr - fine);
  EXPECT_GE(std::log2(e1 / e2), 3.9);
}

TEST(Laminar, Froude) {
  const auto flow = solve_laminar(Vorticity::constant(0.0));
  EXPECT_NEAR(froude(flow, 1.0).froude, 1.0, 1e-10);
  EXPECT_NEAR(froude(flow, 0.25).froude, 2.0, 1e-10);
  const auto c = solve_laminar(Vorticity::constant(-1.0));
  EXPECT_NEAR(froude(c, 0.75).froude_cr, std::sqrt(3.0), 1e-8);
  EXPECT_THROW((void)froude(flow, 0.0), DomainError);
}

TEST(Laminar, NoUnidirectionalFlow) {
  // psi'' = -5 psi cannot stay monotone on [0, 1]
  EXPECT_THROW((void)solve_laminar(Vorticity::affine(5.0)), ModelError);
}

TEST(Laminar, ResampledKeepsScalars) {
  const auto flow = solve_laminar(Vorticity::affine(1.0));
  const auto coarse = flow.resampled(41);
  EXPECT_EQ(coarse.size(), 41u);
  EXPECT_DOUBLE_EQ(coarse.alpha_cr, flow.alpha_cr);
  EXPECT_NEAR(coarse.psi[20], std::sin(0.5) / std::sin(1.0), 1e-10);
}

}  // namespace
}  // namespace vorwave
