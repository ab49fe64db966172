#include "vorwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "vorwave/errors.hpp"
#include "vorwave/quadrature.hpp"

namespace vorwave {

namespace {

using Eigen::Index;

Index idx(std::size_t k) { return static_cast<Index>(k); }

struct Derived {
  DerivedFields f;
  VelocityField vel;
};

VelocityField velocity_from(const DerivedFields& f) {
  VelocityField out;
  const Field g = f.eta_x.square() + f.eta_y.square();
  if (!(g.minCoeff() >= 1e-12)) throw ConformalityError("|grad eta|^2 fell below 1e-12");
  out.u = (f.psi_x * f.eta_x + f.psi_y * f.eta_y) / g;
  out.v = (f.psi_y * f.eta_x - f.psi_x * f.eta_y) / g;
  return out;
}

Derived derive(const StripSolver& solver, const WaveState& state) {
  Derived d;
  d.f = solver.fields(state);
  d.vel = velocity_from(d.f);
  return d;
}

double column_force(const StripSolver& solver, const WaveState& state, const Derived& d,
                    std::size_t i) {
  const Grid& grid = solver.grid();
  const Vorticity& gam = solver.vorticity();
  const double g1 = gam.antiderivative(1.0);
  std::vector<double> integrand(grid.ny);
  const Index ii = idx(i);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    const Index jj = idx(j);
    const double u = d.vel.u(ii, jj), v = d.vel.v(ii, jj);
    integrand[j] = (0.5 * (u * u - v * v) - state.alpha * (d.f.eta(ii, jj) - 1.0) +
                    (gam.antiderivative(d.f.psi(ii, jj)) - g1) + 0.5 * solver.mu()) *
                       d.f.eta_y(ii, jj) +
                   u * v * d.f.eta_x(ii, jj);
  }
  return simpson(integrand, grid.hy());
}

/// Columns with x > 0 that carry unknowns.
std::pair<std::size_t, std::size_t> positive_columns(const Grid& g) {
  return {g.crest_column() + 1, g.active_columns()};
}

}  // namespace

VelocityField velocity_field(const StripSolver& solver, const WaveState& state) {
  return derive(solver, state).vel;
}

double flow_force(const StripSolver& solver, const WaveState& state, std::size_t x_index) {
  if (x_index >= solver.grid().nx) throw DomainError("column index out of range");
  return column_force(solver, state, derive(solver, state), x_index);
}

FlowForceProfile flow_force_profile(const StripSolver& solver, const WaveState& state,
                                    std::size_t stride) {
  if (stride == 0) throw DomainError("flow force stride must be positive");
  const Derived d = derive(solver, state);
  const Grid& grid = solver.grid();
  FlowForceProfile p;
  const std::size_t crest = grid.crest_column();
  for (std::size_t i = crest; i < grid.active_columns(); i += stride) {
    p.columns.push_back(i);
    p.x.push_back(grid.x(i));
    p.s.push_back(column_force(solver, state, d, i));
  }
  const double s0 = p.s.front();
  for (double s : p.s) p.drift = std::max(p.drift, std::abs(s - s0) / std::abs(s0));
  return p;
}

NodalReport nodal_check(const StripSolver& solver, const WaveState& state, WaveType type) {
  const Derived d = derive(solver, state);
  const Grid& grid = solver.grid();
  const double sign = type == WaveType::elevation ? -1.0 : 1.0;
  NodalReport r;
  bool any_signal = false;
  const auto [first, last] = positive_columns(grid);
  for (std::size_t i = first; i < last; ++i) {
    for (std::size_t j = 1; j < grid.ny; ++j) {
      const double ex = d.f.eta_x(idx(i), idx(j));
      const double v = d.vel.v(idx(i), idx(j));
      if (std::abs(ex) > kNodalNoiseFloor) {
        any_signal = true;
        ++r.checked;
        if (sign * ex <= 0.0 && r.ok) {
          r.ok = false;
          r.first_violation = {i, j};
          r.violation_value = ex;
        }
      }
      if (std::abs(v) > kNodalNoiseFloor && sign * v <= 0.0 && r.v_ok) {
        r.v_ok = false;
        r.first_v_violation = {i, j};
      }
    }
  }
  r.trivial = !any_signal;
  return r;
}

SurfaceCurve surface_reconstruction(const std::vector<double>& x,
                                    const std::vector<double>& eta_y_top,
                                    const std::vector<double>& eta_top) {
  const std::size_t n = x.size();
  if (n < 2 || eta_y_top.size() != n || eta_top.size() != n)
    throw DomainError("surface samples need matching lengths of at least 2");
  SurfaceCurve c;
  c.xi.assign(n, 0.0);
  c.eta = eta_top;
  for (std::size_t k = 1; k < n; ++k)
    c.xi[k] = c.xi[k - 1] + 0.5 * (x[k] - x[k - 1]) * (eta_y_top[k] + eta_y_top[k - 1]);
  c.min_xi_x = *std::min_element(eta_y_top.begin(), eta_y_top.end());
  c.overhang = c.min_xi_x < -kOverhangThreshold &&
               *std::max_element(eta_y_top.begin(), eta_y_top.end()) > kOverhangThreshold;
  for (std::size_t k = 1; k < n; ++k) {
    const double seg = std::hypot(c.xi[k] - c.xi[k - 1], c.eta[k] - c.eta[k - 1]);
    if (!(seg > 0.0) || !std::isfinite(seg)) c.arclength_ok = false;
  }
  return c;
}

SurfaceCurve surface_reconstruction(const StripSolver& solver, const WaveState& state) {
  const DerivedFields f = solver.fields(state);
  const Grid& grid = solver.grid();
  const Index top = idx(grid.ny - 1);
  std::vector<double> x, ey, e;
  for (std::size_t i = grid.crest_column(); i < grid.nx; ++i) {
    x.push_back(grid.x(i));
    ey.push_back(f.eta_y(idx(i), top));
    e.push_back(f.eta(idx(i), top));
  }
  return surface_reconstruction(x, ey, e);
}

BernoulliReport bernoulli_residual(const StripSolver& solver, const WaveState& state) {
  const Derived d = derive(solver, state);
  const Grid& grid = solver.grid();
  const Index top = idx(grid.ny - 1);
  BernoulliReport b;
  b.stagnation_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.active_columns(); ++i) {
    const Index ii = idx(i);
    const double q = d.vel.u(ii, top) * d.vel.u(ii, top) + d.vel.v(ii, top) * d.vel.v(ii, top);
    b.residual = std::max(
        b.residual, std::abs(q - solver.mu() + 2.0 * state.alpha * (d.f.eta(ii, top) - 1.0)));
    b.stagnation_margin = std::min(b.stagnation_margin, q);
  }
  return b;
}

ConjugateFlow conjugate_flow(double mu, double alpha) {
  ConjugateFlow c;
  if (!(mu > 0.0) || !(alpha > 0.0)) throw DomainError("conjugate flow needs mu > 0 and alpha > 0");
  // Q(d) = Q(1) reduces to (d - 1)(2 alpha d^2 - mu d - mu) = 0
  const auto quad = [&](double d) { return 2.0 * alpha * d * d - mu * d - mu; };
  const double excl = 1e-9;
  const int samples = 4000;
  std::optional<std::pair<double, double>> bracket;
  double prev_d = 1e-6, prev = quad(prev_d);
  for (int k = 1; k <= samples && !bracket; ++k) {
    const double d = 1e-6 + (10.0 - 1e-6) * k / samples;
    const double val = quad(d);
    if ((prev <= 0.0) != (val <= 0.0)) bracket = std::make_pair(prev_d, d);
    prev_d = d;
    prev = val;
  }
  if (!bracket) {
    c.message = "no conjugate depth in range";
    return c;
  }
  std::uintmax_t iters = 200;
  const auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(1.0, std::abs(a)); };
  const auto [lo, hi] = boost::math::tools::toms748_solve(quad, bracket->first, bracket->second,
                                                          tol, iters);
  const double d_star = 0.5 * (lo + hi);
  if (std::abs(d_star - 1.0) < excl) {
    c.message = "conjugate depth coincides with the laminar depth";
    return c;
  }
  c.found = true;
  c.d_star = d_star;
  const auto s_prime = [&](double s) { return 0.5 * mu * (1.0 / (s * s) + 1.0) - alpha * (s - 1.0); };
  c.s_gap = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(s_prime, 1.0, d_star, 8,
                                                                          1e-14);
  c.s_gap_closed_form = 0.5 * alpha * (d_star * d_star - 1.0);
  c.convexity_ok = true;
  for (int k = 1; k <= 200; ++k) {
    const double d = 10.0 * k / 200.0;
    if (!(6.0 * mu / std::pow(d, 4) > 0.0)) c.convexity_ok = false;
  }
  return c;
}

ConjugateFlow conjugate_flow(const LaminarFlow& flow, double alpha) {
  if (!(alpha > 0.0 && alpha < flow.alpha_cr))
    throw DomainError("conjugate flow needs 0 < alpha < alpha_cr");
  return conjugate_flow(flow.psi_y_top() * flow.psi_y_top(), alpha);
}

PhysicalSummary dimensional_restore(const StripSolver& solver, const WaveState& state, double g,
                                    double depth) {
  if (!(g > 0.0) || !(depth > 0.0)) throw DomainError("gravity and depth must be positive");
  if (!(state.alpha > 0.0)) throw DomainError("alpha must be positive");
  PhysicalSummary p;
  p.froude = std::sqrt(solver.mu() / state.alpha);
  p.mass_flux = std::sqrt(g * depth * depth * depth / state.alpha);
  p.wave_speed = p.froude * std::sqrt(g * depth);
  p.crest_height = depth * state.crest();
  const SurfaceCurve c = surface_reconstruction(solver, state);
  for (std::size_t k = 0; k < c.xi.size(); ++k) {
    p.xi.push_back(depth * c.xi[k]);
    p.eta.push_back(depth * c.eta[k]);
  }
  return p;
}

double far_field_leakage(const StripSolver& solver, const WaveState& state) {
  const Grid& g = solver.grid();
  if (state.w.size() != idx(g.nx)) throw DomainError("state does not match the grid");
  const double right = std::abs(state.w(idx(g.active_columns() - 1)));
  if (g.closure == LateralClosure::even_half_strip) return right;
  return std::max(right, std::abs(state.w(0)));
}

DiagnosticsReport diagnose(const StripSolver& solver, const WaveState& state, WaveType type,
                           std::size_t stride) {
  DiagnosticsReport r;
  r.flow_force = flow_force_profile(solver, state, stride);
  r.bernoulli = bernoulli_residual(solver, state);
  r.nodal = nodal_check(solver, state, type);
  r.surface = surface_reconstruction(solver, state);
  const Admissibility a = solver.admissibility(state);
  r.sigma_surface = a.sigma_surface;
  r.sigma_domain = a.sigma_domain;
  r.far_field_leakage = far_field_leakage(solver, state);
  if (state.alpha > 0.0 && state.alpha < solver.alpha_cr()) {
    r.conjugate = conjugate_flow(solver.mu(), state.alpha);
  } else {
    r.conjugate.message = "alpha outside (0, alpha_cr)";
  }
  return r;
}

}  // namespace vorwave
