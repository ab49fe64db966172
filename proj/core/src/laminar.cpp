#include "vorwave/laminar.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "vorwave/errors.hpp"
#include "vorwave/quadrature.hpp"

namespace vorwave {

namespace {

namespace odeint = boost::numeric::odeint;

using State = std::array<double, 4>;  // psi, psi', d psi / d slope, d psi' / d slope

constexpr double kSlopeLow = 1e-6;
constexpr double kSlopeHigh = 50.0;
constexpr double kOdeTol = 1e-13;
constexpr double kBlowup = 1e8;

struct Diverged {};

struct LaminarRhs {
  const Vorticity* gamma;
  void operator()(const State& x, State& dxdy, double /*y*/) const {
    if (!std::isfinite(x[0]) || std::abs(x[0]) > kBlowup) throw Diverged{};
    dxdy[0] = x[1];
    dxdy[1] = -gamma->eval(x[0], 0);
    dxdy[2] = x[3];
    dxdy[3] = -gamma->eval(x[0], 1) * x[2];
  }
};

auto make_stepper() {
  return odeint::make_controlled(kOdeTol, kOdeTol, odeint::runge_kutta_fehlberg78<State>());
}

struct Shot {
  double mismatch;    // psi(1) - 1
  double derivative;  // d psi(1) / d slope
};

std::optional<Shot> shoot(const Vorticity& gamma, double slope) {
  State x{0.0, slope, 0.0, 1.0};
  try {
    odeint::integrate_adaptive(make_stepper(), LaminarRhs{&gamma}, x, 0.0, 1.0, 1e-3);
  } catch (const Diverged&) {
    return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;  // left the tabulated range
  }
  if (!std::isfinite(x[0]) || !std::isfinite(x[2])) return std::nullopt;
  return Shot{x[0] - 1.0, x[2]};
}

std::vector<double> uniform_grid(std::size_t ny) {
  std::vector<double> y(ny);
  for (std::size_t j = 0; j < ny; ++j) y[j] = static_cast<double>(j) / static_cast<double>(ny - 1);
  y.back() = 1.0;
  return y;
}

Shot integrate_on_grid(const Vorticity& gamma, double slope, const std::vector<double>& y,
                       std::vector<double>& psi, std::vector<double>& psi_y) {
  psi.assign(y.size(), 0.0);
  psi_y.assign(y.size(), 0.0);
  State x{0.0, slope, 0.0, 1.0};
  std::size_t k = 0;
  auto observer = [&](const State& s, double) {
    psi[k] = s[0];
    psi_y[k] = s[1];
    ++k;
  };
  try {
    odeint::integrate_times(make_stepper(), LaminarRhs{&gamma}, x, y.begin(), y.end(), y[1] - y[0],
                            observer);
  } catch (const Diverged&) {
    throw NumericError("laminar profile diverged during integration");
  }
  return Shot{x[0] - 1.0, x[2]};
}

double refine_root(const Vorticity& gamma, double lo, double hi, double f_lo, double tol) {
  // bisection down to a tight bracket, then Newton polish on the variational derivative
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto shot = shoot(gamma, mid);
    if (!shot) throw NumericError("laminar shooting failed inside a valid bracket");
    if ((shot->mismatch < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = shot->mismatch;
    } else {
      hi = mid;
    }
  }
  double slope = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const auto shot = shoot(gamma, slope);
    if (!shot || shot->derivative == 0.0) break;
    if (std::abs(shot->mismatch) <= 0.1 * tol) break;
    const double next = slope - shot->mismatch / shot->derivative;
    if (!(next > lo - 1e-12 && next < hi + 1e-12)) break;
    slope = next;
  }
  return slope;
}

}  // namespace

LaminarFlow solve_laminar(const Vorticity& vorticity, std::size_t ny, double tol) {
  if (ny < 33) throw DomainError("laminar grid needs at least 33 nodes");
  if (!(tol > 0.0)) throw DomainError("laminar tolerance must be positive");

  constexpr int kScan = 240;
  std::vector<double> slopes(kScan + 1);
  for (int k = 0; k <= kScan; ++k)
    slopes[static_cast<std::size_t>(k)] =
        kSlopeLow * std::pow(kSlopeHigh / kSlopeLow, static_cast<double>(k) / kScan);

  std::optional<Shot> previous = shoot(vorticity, slopes[0]);
  for (std::size_t k = 1; k < slopes.size(); ++k) {
    const auto current = shoot(vorticity, slopes[k]);
    if (previous && current) {
      const bool change = (previous->mismatch <= 0.0) != (current->mismatch <= 0.0) ||
                          previous->mismatch == 0.0;
      if (change) {
        const double slope = previous->mismatch == 0.0
                                 ? slopes[k - 1]
                                 : refine_root(vorticity, slopes[k - 1], slopes[k],
                                               previous->mismatch, tol);
        LaminarFlow flow;
        flow.vorticity = vorticity;
        flow.y = uniform_grid(ny);
        flow.slope0 = slope;
        Shot end = integrate_on_grid(vorticity, slope, flow.y, flow.psi, flow.psi_y);
        // the grid pass steps differently from the shots; polish on it
        for (int it = 0; it < 4 && std::abs(end.mismatch) > 0.1 * tol && end.derivative != 0.0; ++it) {
          flow.slope0 -= end.mismatch / end.derivative;
          end = integrate_on_grid(vorticity, flow.slope0, flow.y, flow.psi, flow.psi_y);
        }
        flow.min_psi_y = *std::min_element(flow.psi_y.begin(), flow.psi_y.end());
        if (flow.min_psi_y <= kMinLaminarSlope) {
          previous = current;
          continue;
        }
        if (std::abs(flow.psi.back() - 1.0) > tol) {
          std::ostringstream msg;
          msg << "laminar shooting did not converge: |psi(1) - 1| = "
              << std::abs(flow.psi.back() - 1.0);
          throw NumericError(msg.str());
        }
        flow.mu = flow.psi_y_top() * flow.psi_y_top();
        const auto crit = critical_alpha(flow);
        flow.alpha_cr = crit.alpha_cr;
        flow.alpha_tilde_cr = crit.alpha_tilde_cr;
        return flow;
      }
    }
    previous = current;
  }
  throw ModelError("no admissible laminar flow");
}

CriticalValues critical_alpha(const LaminarFlow& flow) {
  if (!(flow.min_psi_y > kMinLaminarSlope))
    throw ModelError("laminar flow is not unidirectional; critical integral diverges");
  std::vector<double> integrand(flow.size());
  for (std::size_t j = 0; j < flow.size(); ++j)
    integrand[j] = 1.0 / (flow.psi_y[j] * flow.psi_y[j]);
  const double integral = simpson(integrand, flow.h());
  const double top = flow.psi_y_top();
  CriticalValues out;
  out.alpha_cr = 1.0 / integral;
  out.alpha_tilde_cr = -flow.vorticity(1.0) / top + 1.0 / (top * top * integral);
  return out;
}

FroudeNumbers froude(const LaminarFlow& flow, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("froude number needs alpha > 0");
  return {std::sqrt(flow.mu / alpha), std::sqrt(flow.mu / flow.alpha_cr)};
}

LaminarFlow LaminarFlow::resampled(std::size_t ny) const {
  if (ny < 3) throw DomainError("laminar resample needs at least 3 nodes");
  if (ny == size()) return *this;
  LaminarFlow out = *this;
  out.y = uniform_grid(ny);
  integrate_on_grid(vorticity, slope0, out.y, out.psi, out.psi_y);
  out.min_psi_y = *std::min_element(out.psi_y.begin(), out.psi_y.end());
  return out;
}

}  // namespace vorwave
