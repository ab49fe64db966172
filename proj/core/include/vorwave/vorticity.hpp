#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vorwave {

struct ConstantVorticity {
  double value = 0.0;
};

/// gamma(s) = slope * s
struct AffineVorticity {
  double slope = 0.0;
};

/// gamma(s) = sum_k coefficients[k] * s^k
struct PolynomialVorticity {
  std::vector<double> coefficients;
};

/// Clamped cubic spline through tabulated samples.
class TabulatedVorticity {
 public:
  TabulatedVorticity(std::vector<double> s, std::vector<double> gamma, double slope_left,
                     double slope_right);

  /// End slopes estimated with second-order one-sided differences.
  TabulatedVorticity(std::vector<double> s, std::vector<double> gamma);

  double eval(double s, int order) const;
  double antiderivative(double s) const;

  const std::vector<double>& abscissae() const noexcept { return s_; }
  const std::vector<double>& values() const noexcept { return gamma_; }
  double slope_left() const noexcept { return slope_left_; }
  double slope_right() const noexcept { return slope_right_; }
  double lower() const noexcept { return s_.front(); }
  double upper() const noexcept { return s_.back(); }

 private:
  std::size_t interval(double s) const;

  std::vector<double> s_;
  std::vector<double> gamma_;
  std::vector<double> second_;  // spline second derivatives at knots
  double slope_left_;
  double slope_right_;
};

/// Vorticity function gamma(psi) with derivatives and antiderivative G(s) = int_0^s gamma.
/// Immutable after construction.
class Vorticity {
 public:
  using Kind = std::variant<ConstantVorticity, AffineVorticity, PolynomialVorticity,
                            TabulatedVorticity>;

  static constexpr double kDefaultMargin = 0.5;

  Vorticity() : kind_(ConstantVorticity{}) {}

  static Vorticity constant(double value);
  static Vorticity affine(double slope);
  static Vorticity polynomial(std::vector<double> coefficients);
  /// Throws DomainError unless the samples cover [-margin, 1 + margin].
  static Vorticity tabulated(TabulatedVorticity table, double margin = kDefaultMargin);

  /// gamma, gamma' or gamma'' at s.
  double eval(double s, int order = 0) const;
  double operator()(double s) const { return eval(s, 0); }
  /// G(s); G(0) == 0 exactly.
  double antiderivative(double s) const;

  std::string_view kind_name() const;
  const Kind& kind() const noexcept { return kind_; }
  double margin() const noexcept { return margin_; }
  bool is_tabulated() const noexcept { return std::holds_alternative<TabulatedVorticity>(kind_); }
  /// Zero function (all kinds checked structurally, tabulated never counts).
  bool is_zero() const;

 private:
  explicit Vorticity(Kind kind, double margin = kDefaultMargin)
      : kind_(std::move(kind)), margin_(margin) {}

  Kind kind_;
  double margin_ = kDefaultMargin;
};

nlohmann::json to_json(const Vorticity& vorticity);
/// Accepts {"kind": "constant"|"affine"|"polynomial"|"tabulated", ...}.
Vorticity vorticity_from_json(const nlohmann::json& j);
/// "constant:-1", "affine:1", "polynomial:0,0,3" or "zero".
Vorticity parse_vorticity_shorthand(std::string_view text);

}  // namespace vorwave
