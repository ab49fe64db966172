#include "vorwave/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "vorwave/errors.hpp"
#include "vorwave/quadrature.hpp"

namespace vorwave {

namespace {

/// Symmetric tridiagonal form of the generalized problem A v = nu B v with B = diag(1, ..., 1, 1/2).
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[k] couples k and k + 1
};

Tridiagonal assemble(const LaminarFlow& flow, double alpha_tilde) {
  const std::size_t n = flow.size() - 1;  // unknowns v_1..v_N
  const double h = flow.h();
  const double inv_h2 = 1.0 / (h * h);
  Tridiagonal t;
  t.diag.resize(n);
  t.off.assign(n - 1, -inv_h2);
  for (std::size_t k = 0; k < n; ++k) {
    const double dgamma = flow.vorticity.eval(flow.psi[k + 1], 1);
    t.diag[k] = 2.0 * inv_h2 - dgamma;
  }
  t.diag[n - 1] -= 2.0 * alpha_tilde / h;
  t.off[n - 2] = -std::sqrt(2.0) * inv_h2;
  return t;
}

std::size_t sturm_count(const Tridiagonal& t, double lambda) {
  std::size_t count = 0;
  double q = t.diag[0] - lambda;
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  for (std::size_t k = 0;; ++k) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (k + 1 == t.diag.size()) break;
    q = t.diag[k + 1] - lambda - t.off[k] * t.off[k] / q;
  }
  return count;
}

double smallest_eigenvalue(const Tridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < t.diag.size(); ++k) {
    const double r = (k > 0 ? std::abs(t.off[k - 1]) : 0.0) +
                     (k + 1 < t.diag.size() ? std::abs(t.off[k]) : 0.0);
    lo = std::min(lo, t.diag[k] - r);
    hi = std::max(hi, t.diag[k] + r);
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd inverse_iteration(const Tridiagonal& t, double shift) {
  const auto n = static_cast<Eigen::Index>(t.diag.size());
  const double scale = std::max(1.0, std::abs(t.diag[0]));
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(3 * n));
    for (Eigen::Index k = 0; k < n; ++k) {
      entries.emplace_back(k, k, t.diag[static_cast<std::size_t>(k)] - shift);
      if (k + 1 < n) {
        entries.emplace_back(k, k + 1, t.off[static_cast<std::size_t>(k)]);
        entries.emplace_back(k + 1, k, t.off[static_cast<std::size_t>(k)]);
      }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) {
      shift += 1e-12 * scale;  // landed exactly on the eigenvalue
      continue;
    }
    for (int it = 0; it < 4; ++it) {
      Eigen::VectorXd next = lu.solve(x);
      if (!next.allFinite()) break;
      x = next / next.norm();
    }
    if (x.allFinite()) return x;
  }
  throw NumericError("inverse iteration for the principal eigenvector failed");
}

double discrete_rayleigh(const LaminarFlow& flow, double alpha_tilde, std::span<const double> v) {
  const double h = flow.h();
  const std::size_t n = v.size() - 1;
  double grad = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = v[j + 1] - v[j];
    grad += d * d;
  }
  grad /= h;
  std::vector<double> weighted(v.size()), mass(v.size());
  for (std::size_t j = 0; j <= n; ++j) {
    weighted[j] = flow.vorticity.eval(flow.psi[j], 1) * v[j] * v[j];
    mass[j] = v[j] * v[j];
  }
  const double denominator = trapezoid(mass, h);
  if (!(denominator > 0.0)) throw DomainError("rayleigh quotient of a zero trial function");
  return (grad - trapezoid(weighted, h) - alpha_tilde * v[n] * v[n]) / denominator;
}

}  // namespace

EigenSolution principal_eigen(const LaminarFlow& flow_in, double alpha_tilde, std::size_t ny) {
  if (ny < 65) throw DomainError("eigen grid needs at least 65 nodes");
  if (!(flow_in.min_psi_y > 0.0)) throw DomainError("laminar flow is not valid");
  const LaminarFlow flow = flow_in.resampled(ny);

  const Tridiagonal t = assemble(flow, alpha_tilde);
  const double lambda = smallest_eigenvalue(t);
  const Eigen::VectorXd u = inverse_iteration(t, lambda);

  EigenSolution out;
  out.y = flow.y;
  out.alpha_tilde = alpha_tilde;
  out.phi0.assign(ny, 0.0);
  const auto n = static_cast<Eigen::Index>(ny - 1);
  for (Eigen::Index k = 0; k < n; ++k) out.phi0[static_cast<std::size_t>(k + 1)] = u[k];
  out.phi0.back() *= std::sqrt(2.0);

  const double top = out.phi0.back();
  const double peak = u.cwiseAbs().maxCoeff();
  if (!(std::abs(top) > 1e-8 * peak))
    throw DegeneracyError("principal eigenfunction vanishes at the surface; cannot normalize");
  for (double& v : out.phi0) v /= top;

  out.nu0 = discrete_rayleigh(flow, alpha_tilde, out.phi0);
  if (!std::isfinite(out.nu0)) throw NumericError("principal eigenvalue is not finite");
  std::vector<double> sq(ny);
  for (std::size_t j = 0; j < ny; ++j) sq[j] = out.phi0[j] * out.phi0[j];
  out.norm_l2_sq = trapezoid(sq, out.h());
  return out;
}

std::vector<double> liouville_zero_mode(const LaminarFlow& flow) {
  if (!(flow.min_psi_y > 0.0)) throw ModelError("laminar flow is not unidirectional");
  const std::size_t n = flow.size();
  const double h = flow.h();
  auto f = [&](std::size_t j) { return 1.0 / (flow.psi_y[j] * flow.psi_y[j]); };
  // derivative of 1/psi_y^2 is 2 gamma(psi) / psi_y^3
  auto df = [&](std::size_t j) {
    return 2.0 * flow.vorticity(flow.psi[j]) / (flow.psi_y[j] * flow.psi_y[j] * flow.psi_y[j]);
  };
  std::vector<double> v(n, 0.0);
  double running = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    running += 0.5 * h * (f(j - 1) + f(j));
    const double corrected = running - h * h / 12.0 * (df(j) - df(0));  // Euler-Maclaurin
    v[j] = flow.psi_y[j] * corrected;
  }
  const double top = v.back();
  for (double& value : v) value /= top;
  return v;
}

double rayleigh(const LaminarFlow& flow, double alpha_tilde, std::span<const double> trial) {
  if (trial.size() != flow.size())
    throw DomainError("rayleigh trial must be sampled on the laminar grid");
  double peak = 0.0;
  for (double v : trial) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw DomainError("rayleigh quotient of a zero trial function");
  if (std::abs(trial[0]) > 1e-12 * peak) throw DomainError("rayleigh trial must vanish at y = 0");
  return discrete_rayleigh(flow, alpha_tilde, trial);
}

}  // namespace vorwave

namespace vorwave {

std::vector<double> phi0_on_grid(const EigenSolution& eig, std::size_t ny) {
  if (ny < 2) throw DomainError("grid needs at least two nodes");
  std::vector<double> out(ny);
  const double h = eig.h();
  const std::size_t last = eig.size() - 1;
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = static_cast<double>(j) / static_cast<double>(ny - 1);
    const std::size_t k = std::min(static_cast<std::size_t>(y / h), last - 1);
    const double t = y / h - static_cast<double>(k);
    out[j] = (1.0 - t) * eig.phi0[k] + t * eig.phi0[k + 1];
  }
  return out;
}

}  // namespace vorwave
