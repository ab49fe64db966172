#include "vorwave/cm_reduction.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "vorwave/errors.hpp"
#include "vorwave/quadrature.hpp"

namespace vorwave {

namespace {

LaminarFlow on_eigen_grid(const LaminarFlow& flow, const EigenSolution& eig) {
  return flow.size() == eig.size() ? flow : flow.resampled(eig.size());
}

void check_critical(const EigenSolution& eig) {
  if (!(std::abs(eig.nu0) <= kCriticalNuTolerance)) {
    std::ostringstream msg;
    msg << "eigenproblem is not critical: |nu0| = " << std::abs(eig.nu0);
    throw DomainError(msg.str());
  }
}

// Bordered system for -u'' - gamma' u + lambda phi0 = s, u(0) = 0, u'(1) - at u(1) = beta,
// h sum' phi0 u = 0.
std::pair<std::vector<double>, double> bordered_solve(const LaminarFlow& flow,
                                                      const EigenSolution& eig,
                                                      const std::vector<double>& s, double beta) {
  const std::size_t n = eig.size() - 1;  // unknowns u_1..u_N, then lambda
  const double h = eig.h();
  const double ih2 = 1.0 / (h * h);
  const auto& phi = eig.phi0;
  using Sparse = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> e;
  e.reserve(5 * n);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n + 1));
  const auto col = [](std::size_t j) { return static_cast<Eigen::Index>(j - 1); };
  const Eigen::Index lam = static_cast<Eigen::Index>(n);
  for (std::size_t j = 1; j < n; ++j) {
    const Eigen::Index r = col(j);
    if (j > 1) e.emplace_back(r, col(j - 1), -ih2);
    e.emplace_back(r, r, 2.0 * ih2 - flow.vorticity.eval(flow.psi[j], 1));
    e.emplace_back(r, col(j + 1), -ih2);
    e.emplace_back(r, lam, phi[j]);
    rhs[r] = s[j];
  }
  const Eigen::Index top = col(n);
  e.emplace_back(top, col(n - 1), -ih2);
  e.emplace_back(top, top,
                 ih2 - eig.alpha_tilde / h - 0.5 * flow.vorticity.eval(flow.psi[n], 1));
  e.emplace_back(top, lam, 0.5 * phi[n]);
  rhs[top] = 0.5 * s[n] + beta / h;
  for (std::size_t j = 1; j <= n; ++j) e.emplace_back(lam, col(j), (j == n ? 0.5 : 1.0) * h * phi[j]);
  rhs[lam] = 0.0;

  Sparse m(lam + 1, lam + 1);
  m.setFromTriplets(e.begin(), e.end());
  m.makeCompressed();
  Eigen::SparseLU<Sparse> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) throw NumericError("correction system is singular");
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw NumericError("correction solve failed");
  std::vector<double> u(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) u[j] = x[col(j)];
  return {std::move(u), x[lam]};
}

}  // namespace

std::string to_string(WaveType t) {
  return t == WaveType::elevation ? "elevation" : "depression";
}

CMCoefficients compute_coefficients(const LaminarFlow& flow_in, const EigenSolution& eig) {
  check_critical(eig);
  const LaminarFlow flow = on_eigen_grid(flow_in, eig);
  const auto& gam = flow.vorticity;
  const std::size_t n = eig.size();
  const double h = eig.h();
  const double p = flow.psi_y_top();
  const double top = eig.phi0.back();

  CMCoefficients cm;
  cm.y = eig.y;
  cm.theta.resize(n);
  std::vector<double> theta_phi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = eig.y[j];
    const double psi = flow.psi[j];
    const double py = flow.psi_y[j];
    const double phi = eig.phi0[j];
    const double lead = phi + py / (p * p) * top * y;
    cm.theta[j] = -gam.eval(psi, 2) * lead * lead -
                  2.0 * gam.eval(psi, 1) * (top * phi / p * y + py / (p * p * p) * top * top * y * y) -
                  2.0 * gam.eval(psi, 0) * top * top / (p * p);
    theta_phi[j] = cm.theta[j] * phi;
  }
  const double slope_top = eig.alpha_tilde * top;  // phi0'(1) from the Robin condition
  const double bracket = slope_top - top + gam.eval(1.0, 0) / p;
  cm.c0 = -bracket * bracket + (p * p - 4.0 * flow.alpha_cr) * top * top / (p * p);
  cm.m0 = cm.c0 * top / p - trapezoid(theta_phi, h);
  if (std::abs(cm.m0) < kDegenerateM0)
    throw DegeneracyError("quadratic coefficient vanishes; reduction inconclusive");
  const double norm = eig.norm_l2_sq;
  cm.b1 = top * top / (p * p * norm);
  cm.b2 = -cm.m0 / norm;
  cm.f101 = cm.b1 * top;
  cm.f200 = cm.b2 * top;
  cm.wave_type = cm.m0 < 0.0 ? WaveType::elevation : WaveType::depression;

  Corrections c = solve_corrections(flow, eig, cm);
  cm.g_profile = std::move(c.g);
  cm.k_profile = std::move(c.k);
  return cm;
}

Corrections solve_corrections(const LaminarFlow& flow_in, const EigenSolution& eig,
                              const CMCoefficients& cm) {
  check_critical(eig);
  if (cm.theta.size() != eig.size()) throw DomainError("coefficients and eigenfunction grids differ");
  const LaminarFlow flow = on_eigen_grid(flow_in, eig);
  const double p = flow.psi_y_top();
  const double top = eig.phi0.back();
  const std::size_t n = eig.size();

  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = cm.b1 * eig.phi0[j];
  auto [g, lg] = bordered_solve(flow, eig, s, -top / (p * p));
  for (std::size_t j = 0; j < n; ++j) s[j] = -cm.theta[j] + cm.b2 * eig.phi0[j];
  auto [k, lk] = bordered_solve(flow, eig, s, cm.c0 / p);

  Corrections c;
  c.g = std::move(g);
  c.k = std::move(k);
  c.lambda_g = lg;
  c.lambda_k = lk;
  return c;
}

}  // namespace vorwave
