#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vorwave/laminar.hpp"

namespace vorwave {

/// Principal eigenpair of -v'' - gamma'(psi) v = nu v, v(0) = 0, v'(1) = alpha_tilde v(1).
struct EigenSolution {
  double nu0 = 0.0;
  std::vector<double> y;
  std::vector<double> phi0;  ///< normalized so phi0(1) = 1
  double alpha_tilde = 0.0;
  double norm_l2_sq = 0.0;   ///< trapezoid integral of phi0^2

  std::size_t size() const noexcept { return y.size(); }
  double h() const { return 1.0 / static_cast<double>(y.size() - 1); }
};

inline constexpr std::size_t kDefaultEigenNy = 4097;

/// Second-order differences with a ghost-node Robin closure; smallest eigenvalue by
/// Sturm-sequence bisection, eigenvector by inverse iteration.
EigenSolution principal_eigen(const LaminarFlow& flow, double alpha_tilde,
                              std::size_t ny = kDefaultEigenNy);

/// phi0 linearly interpolated onto `ny` uniform nodes of [0, 1].
std::vector<double> phi0_on_grid(const EigenSolution& eig, std::size_t ny);

/// psi_y(y) int_0^y dt / psi_y(t)^2 scaled to v(1) = 1.
std::vector<double> liouville_zero_mode(const LaminarFlow& flow);

/// Discrete Rayleigh quotient on the grid of `flow`; its minimum is the discrete nu0.
double rayleigh(const LaminarFlow& flow, double alpha_tilde, std::span<const double> trial);

}  // namespace vorwave
