#include "vorwave/vorticity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_order(int order) {
  if (order < 0 || order > 2) throw DomainError("vorticity derivative order must be 0, 1 or 2");
}

double polynomial_eval(const std::vector<double>& c, double s, int order) {
  double result = 0.0;
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(order);) {
    double factor = 1.0;
    for (int m = 0; m < order; ++m) factor *= static_cast<double>(k - static_cast<std::size_t>(m));
    result = result * s + factor * c[k];
  }
  return result;
}

std::vector<double> clamped_spline_second_derivatives(const std::vector<double>& x,
                                                      const std::vector<double>& y,
                                                      double slope_left, double slope_right) {
  const std::size_t n = x.size();
  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
  const double h0 = x[1] - x[0];
  const double hn = x[n - 1] - x[n - 2];
  diag[0] = 2.0 * h0;
  sup[0] = h0;
  rhs[0] = 6.0 * ((y[1] - y[0]) / h0 - slope_left);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double hl = x[k] - x[k - 1];
    const double hr = x[k + 1] - x[k];
    sub[k] = hl;
    diag[k] = 2.0 * (hl + hr);
    sup[k] = hr;
    rhs[k] = 6.0 * ((y[k + 1] - y[k]) / hr - (y[k] - y[k - 1]) / hl);
  }
  sub[n - 1] = hn;
  diag[n - 1] = 2.0 * hn;
  rhs[n - 1] = 6.0 * (slope_right - (y[n - 1] - y[n - 2]) / hn);

  // diagonally dominant: Thomas elimination is stable
  for (std::size_t k = 1; k < n; ++k) {
    const double m = sub[k] / diag[k - 1];
    diag[k] -= m * sup[k - 1];
    rhs[k] -= m * rhs[k - 1];
  }
  std::vector<double> second(n);
  second[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) second[k] = (rhs[k] - sup[k] * second[k + 1]) / diag[k];
  return second;
}

void validate_table(const std::vector<double>& s, const std::vector<double>& gamma) {
  if (s.size() != gamma.size()) throw DomainError("tabulated vorticity: size mismatch");
  if (s.size() < 3) throw DomainError("tabulated vorticity needs at least 3 samples");
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!std::isfinite(s[k]) || !std::isfinite(gamma[k]))
      throw DomainError("tabulated vorticity: non-finite sample");
    if (k > 0 && !(s[k] > s[k - 1]))
      throw DomainError("tabulated vorticity: abscissae must be strictly increasing");
  }
}

}  // namespace

TabulatedVorticity::TabulatedVorticity(std::vector<double> s, std::vector<double> gamma,
                                       double slope_left, double slope_right)
    : s_(std::move(s)), gamma_(std::move(gamma)), slope_left_(slope_left),
      slope_right_(slope_right) {
  validate_table(s_, gamma_);
  second_ = clamped_spline_second_derivatives(s_, gamma_, slope_left_, slope_right_);
}

namespace {
double one_sided_slope(const std::vector<double>& x, const std::vector<double>& y, bool left) {
  // three-point Lagrange derivative at the end node
  const std::size_t n = x.size();
  const std::size_t i0 = left ? 0 : n - 1;
  const std::size_t i1 = left ? 1 : n - 2;
  const std::size_t i2 = left ? 2 : n - 3;
  const double x0 = x[i0], x1 = x[i1], x2 = x[i2];
  return y[i0] * (2 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
         y[i1] * (x0 - x2) / ((x1 - x0) * (x1 - x2)) + y[i2] * (x0 - x1) / ((x2 - x0) * (x2 - x1));
}
}  // namespace

TabulatedVorticity::TabulatedVorticity(std::vector<double> s, std::vector<double> gamma)
    : s_(std::move(s)), gamma_(std::move(gamma)) {
  validate_table(s_, gamma_);
  slope_left_ = one_sided_slope(s_, gamma_, true);
  slope_right_ = one_sided_slope(s_, gamma_, false);
  second_ = clamped_spline_second_derivatives(s_, gamma_, slope_left_, slope_right_);
}

std::size_t TabulatedVorticity::interval(double s) const {
  if (!(s >= s_.front() && s <= s_.back())) {
    std::ostringstream msg;
    msg << "tabulated vorticity evaluated at s=" << s << " outside [" << s_.front() << ", "
        << s_.back() << "]";
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  auto k = static_cast<std::size_t>(std::distance(s_.begin(), it));
  return std::clamp<std::size_t>(k, 1, s_.size() - 1) - 1;
}

double TabulatedVorticity::eval(double s, int order) const {
  check_order(order);
  const std::size_t k = interval(s);
  const double h = s_[k + 1] - s_[k];
  const double a = (s_[k + 1] - s) / h;
  const double b = (s - s_[k]) / h;
  switch (order) {
    case 0:
      return a * gamma_[k] + b * gamma_[k + 1] +
             ((a * a * a - a) * second_[k] + (b * b * b - b) * second_[k + 1]) * h * h / 6.0;
    case 1:
      return (gamma_[k + 1] - gamma_[k]) / h - (3.0 * a * a - 1.0) / 6.0 * h * second_[k] +
             (3.0 * b * b - 1.0) / 6.0 * h * second_[k + 1];
    default:
      return a * second_[k] + b * second_[k + 1];
  }
}

double TabulatedVorticity::antiderivative(double s) const {
  if (s == 0.0) return 0.0;
  const double lo = std::min(0.0, s);
  const double hi = std::max(0.0, s);
  const std::size_t k_lo = interval(lo);
  const std::size_t k_hi = interval(hi);

  // exact primitive of the cubic on interval k
  auto primitive = [this](std::size_t k, double t) {
    const double h = s_[k + 1] - s_[k];
    const double a = (s_[k + 1] - t) / h;
    const double b = (t - s_[k]) / h;
    return h * (gamma_[k + 1] * b * b - gamma_[k] * a * a) / 2.0 +
           h * h * h *
               (second_[k + 1] * (b * b * b * b - 2.0 * b * b) -
                second_[k] * (a * a * a * a - 2.0 * a * a)) /
               24.0;
  };
  double total = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double from = k == k_lo ? lo : s_[k];
    const double to = k == k_hi ? hi : s_[k + 1];
    total += primitive(k, to) - primitive(k, from);
  }
  return s > 0.0 ? total : -total;
}

Vorticity Vorticity::constant(double value) { return Vorticity(ConstantVorticity{value}); }

Vorticity Vorticity::affine(double slope) { return Vorticity(AffineVorticity{slope}); }

Vorticity Vorticity::polynomial(std::vector<double> coefficients) {
  for (double c : coefficients)
    if (!std::isfinite(c)) throw DomainError("polynomial vorticity: non-finite coefficient");
  return Vorticity(PolynomialVorticity{std::move(coefficients)});
}

Vorticity Vorticity::tabulated(TabulatedVorticity table, double margin) {
  if (!(margin >= 0.0)) throw DomainError("vorticity margin must be non-negative");
  if (table.lower() > -margin || table.upper() < 1.0 + margin) {
    std::ostringstream msg;
    msg << "tabulated vorticity must cover [" << -margin << ", " << 1.0 + margin << "]";
    throw DomainError(msg.str());
  }
  return Vorticity(std::move(table), margin);
}

double Vorticity::eval(double s, int order) const {
  check_order(order);
  return std::visit(
      Overloaded{
          [&](const ConstantVorticity& c) { return order == 0 ? c.value : 0.0; },
          [&](const AffineVorticity& a) {
            return order == 0 ? a.slope * s : (order == 1 ? a.slope : 0.0);
          },
          [&](const PolynomialVorticity& p) { return polynomial_eval(p.coefficients, s, order); },
          [&](const TabulatedVorticity& t) { return t.eval(s, order); },
      },
      kind_);
}

double Vorticity::antiderivative(double s) const {
  return std::visit(Overloaded{
                        [&](const ConstantVorticity& c) { return c.value * s; },
                        [&](const AffineVorticity& a) { return 0.5 * a.slope * s * s; },
                        [&](const PolynomialVorticity& p) {
                          double result = 0.0;
                          for (std::size_t k = p.coefficients.size(); k-- > 0;)
                            result = result * s + p.coefficients[k] / static_cast<double>(k + 1);
                          return result * s;
                        },
                        [&](const TabulatedVorticity& t) { return t.antiderivative(s); },
                    },
                    kind_);
}

std::string_view Vorticity::kind_name() const {
  return std::visit(Overloaded{
                        [](const ConstantVorticity&) { return std::string_view{"constant"}; },
                        [](const AffineVorticity&) { return std::string_view{"affine"}; },
                        [](const PolynomialVorticity&) { return std::string_view{"polynomial"}; },
                        [](const TabulatedVorticity&) { return std::string_view{"tabulated"}; },
                    },
                    kind_);
}

bool Vorticity::is_zero() const {
  return std::visit(Overloaded{
                        [](const ConstantVorticity& c) { return c.value == 0.0; },
                        [](const AffineVorticity& a) { return a.slope == 0.0; },
                        [](const PolynomialVorticity& p) {
                          return std::all_of(p.coefficients.begin(), p.coefficients.end(),
                                             [](double c) { return c == 0.0; });
                        },
                        [](const TabulatedVorticity&) { return false; },
                    },
                    kind_);
}

nlohmann::json to_json(const Vorticity& vorticity) {
  nlohmann::json j;
  std::visit(Overloaded{
                 [&](const ConstantVorticity& c) {
                   j = {{"kind", "constant"}, {"value", c.value}};
                 },
                 [&](const AffineVorticity& a) { j = {{"kind", "affine"}, {"slope", a.slope}}; },
                 [&](const PolynomialVorticity& p) {
                   j = {{"kind", "polynomial"}, {"coefficients", p.coefficients}};
                 },
                 [&](const TabulatedVorticity& t) {
                   j = {{"kind", "tabulated"},
                        {"s", t.abscissae()},
                        {"gamma", t.values()},
                        {"slope_left", t.slope_left()},
                        {"slope_right", t.slope_right()}};
                 },
             },
             vorticity.kind());
  if (vorticity.margin() != Vorticity::kDefaultMargin) j["margin"] = vorticity.margin();
  return j;
}

Vorticity vorticity_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw DomainError("vorticity must be an object with a string field \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number())
      throw DomainError(std::string("vorticity kind '") + kind + "' needs numeric field \"" + key +
                        "\"");
    return j[key].get<double>();
  };
  try {
    if (kind == "constant") return Vorticity::constant(number("value"));
    if (kind == "affine") return Vorticity::affine(number("slope"));
    if (kind == "polynomial") {
      if (!j.contains("coefficients") || !j["coefficients"].is_array())
        throw DomainError("polynomial vorticity needs array field \"coefficients\"");
      return Vorticity::polynomial(j["coefficients"].get<std::vector<double>>());
    }
    if (kind == "tabulated") {
      if (!j.contains("s") || !j.contains("gamma"))
        throw DomainError("tabulated vorticity needs arrays \"s\" and \"gamma\"");
      auto s = j["s"].get<std::vector<double>>();
      auto g = j["gamma"].get<std::vector<double>>();
      const double margin = j.value("margin", Vorticity::kDefaultMargin);
      if (j.contains("slope_left") && j.contains("slope_right"))
        return Vorticity::tabulated(
            TabulatedVorticity(std::move(s), std::move(g), number("slope_left"),
                               number("slope_right")),
            margin);
      return Vorticity::tabulated(TabulatedVorticity(std::move(s), std::move(g)), margin);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed vorticity: ") + e.what());
  }
  throw DomainError("unknown vorticity kind '" + kind + "'");
}

namespace {
double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw DomainError("cannot parse number '" + std::string(text) + "'");
  return value;
}
}  // namespace

Vorticity parse_vorticity_shorthand(std::string_view text) {
  if (text == "zero") return Vorticity::constant(0.0);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw DomainError("vorticity shorthand must look like kind:params, got '" + std::string(text) +
                      "'");
  const auto kind = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  if (kind == "constant") return Vorticity::constant(parse_double(params));
  if (kind == "affine") return Vorticity::affine(parse_double(params));
  if (kind == "polynomial") {
    std::vector<double> coefficients;
    std::size_t start = 0;
    while (start <= params.size()) {
      const auto comma = params.find(',', start);
      const auto piece = params.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                               : comma - start);
      coefficients.push_back(parse_double(piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Vorticity::polynomial(std::move(coefficients));
  }
  throw DomainError("unknown vorticity kind '" + std::string(kind) + "' in shorthand");
}

}  // namespace vorwave
