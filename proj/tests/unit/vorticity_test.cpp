#include <cmath>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "vorwave/errors.hpp"
#include "vorwave/vorticity.hpp"

namespace vorwave {
namespace {

TEST(Vorticity, ConstantValue) { EXPECT_DOUBLE_EQ(Vorticity::constant(-2).eval(0.5, 0), -2.0); }

TEST(Vorticity, AffineDerivatives) {
  const auto v = Vorticity::affine(1.0);
  EXPECT_DOUBLE_EQ(v.eval(0.5, 0), 0.5);
  EXPECT_DOUBLE_EQ(v.eval(0.5, 1), 1.0);
  EXPECT_DOUBLE_EQ(v.eval(0.5, 2), 0.0);
}

TEST(Vorticity, PolynomialSlope) {
  EXPECT_DOUBLE_EQ(Vorticity::polynomial({0, 0, 3}).eval(2.0, 1), 12.0);
  EXPECT_DOUBLE_EQ(Vorticity::polynomial({0, 0, 3}).eval(2.0, 2), 6.0);
}

TEST(Vorticity, Antiderivatives) {
  EXPECT_DOUBLE_EQ(Vorticity::constant(1.7).antiderivative(0.3), 1.7 * 0.3);
  EXPECT_DOUBLE_EQ(Vorticity::affine(2.0).antiderivative(0.4), 2.0 * 0.16 / 2.0);
  EXPECT_EQ(Vorticity::polynomial({1, -2, 5}).antiderivative(0.0), 0.0);
  EXPECT_EQ(Vorticity::constant(3.0).antiderivative(0.0), 0.0);
}

TEST(Vorticity, BadOrderRejected) {
  EXPECT_THROW((void)Vorticity::constant(1).eval(0.0, 3), DomainError);
}

Vorticity sine_table() {
  std::vector<double> s, g;
  for (int k = 0; k <= 80; ++k) {
    const double x = -0.5 + 2.0 * k / 80.0;
    s.push_back(x);
    g.push_back(std::sin(x));
  }
  return Vorticity::tabulated(TabulatedVorticity(s, g, std::cos(-0.5), std::cos(1.5)));
}

TEST(Vorticity, TabulatedReproducesSmoothFunction) {
  const auto v = sine_table();
  for (double s : {-0.3, 0.0, 0.41, 0.9, 1.3}) {
    EXPECT_NEAR(v.eval(s, 0), std::sin(s), 1e-7);
    EXPECT_NEAR(v.eval(s, 1), std::cos(s), 1e-5);
    EXPECT_NEAR(v.eval(s, 2), -std::sin(s), 5e-3);
  }
  EXPECT_EQ(v.antiderivative(0.0), 0.0);
  EXPECT_NEAR(v.antiderivative(1.0), 1.0 - std::cos(1.0), 1e-8);
}

TEST(Vorticity, TabulatedValidation) {
  EXPECT_THROW(TabulatedVorticity({0, 0.5, 0.4}, {1, 2, 3}), DomainError);
  EXPECT_THROW(TabulatedVorticity({0, 1}, {1, 2}), DomainError);
  // does not cover the default margin
  EXPECT_THROW((void)Vorticity::tabulated(TabulatedVorticity({0, 0.5, 1}, {0, 0, 0})), DomainError);
  const auto v = sine_table();
  EXPECT_THROW((void)v.eval(1.6, 0), DomainError);
}

double fd_order(const Vorticity& v, double s) {
  auto err = [&](double h) { return std::abs((v.eval(s + h) - v.eval(s - h)) / (2 * h) - v.eval(s, 1)); };
  return std::log2(err(0.02) / err(0.01));
}

TEST(Vorticity, FiniteDifferenceOrder) {
  EXPECT_GE(fd_order(Vorticity::polynomial({0.3, -1, 2, 4}), 0.37), 1.9);
  EXPECT_GE(fd_order(sine_table(), 0.37), 1.9);
}

TEST(Vorticity, AntiderivativeDifferentiatesBack) {
  const auto v = Vorticity::polynomial({0.5, -1.0, 0.0, 2.0});
  const double h = 1e-5;
  for (double s : {0.1, 0.5, 0.95}) {
    const double d = (v.antiderivative(s + h) - v.antiderivative(s - h)) / (2 * h);
    EXPECT_NEAR(d, v.eval(s), 1e-9);
  }
}

TEST(Vorticity, JsonRoundTrip) {
  for (const auto& v : {Vorticity::constant(-1), Vorticity::affine(1.5),
                        Vorticity::polynomial({0, 1, 2}), sine_table()}) {
    const auto back = vorticity_from_json(to_json(v));
    EXPECT_EQ(back.kind_name(), v.kind_name());
    for (double s : {-0.2, 0.3, 1.1}) EXPECT_NEAR(back.eval(s), v.eval(s), 1e-14);
  }
  EXPECT_THROW((void)vorticity_from_json(nlohmann::json{{"kind", "weird"}}), DomainError);
  EXPECT_THROW((void)vorticity_from_json(nlohmann::json{{"kind", "affine"}}), DomainError);
}

TEST(Vorticity, Shorthand) {
  EXPECT_TRUE(parse_vorticity_shorthand("zero").is_zero());
  EXPECT_DOUBLE_EQ(parse_vorticity_shorthand("constant:-1").eval(0.2), -1.0);
  EXPECT_DOUBLE_EQ(parse_vorticity_shorthand("polynomial:0,0,3").eval(2.0, 1), 12.0);
  EXPECT_THROW((void)parse_vorticity_shorthand("affine"), DomainError);
  EXPECT_THROW((void)parse_vorticity_shorthand("affine:x"), DomainError);
}

}  // namespace
}  // namespace vorwave
