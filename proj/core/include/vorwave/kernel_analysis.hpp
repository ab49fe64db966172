#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "vorwave/strip_solver.hpp"
#include "vorwave/sturm.hpp"

namespace vorwave {

struct KernelAnalysis {
  std::vector<double> singular_values;  ///< smallest first
  /// Cosine between each right singular vector (in theta form) and span{phi0(y), x phi0(y)}.
  std::vector<double> span_correlation;
  /// Cosine with phi0(y) alone.
  std::vector<double> phi0_correlation;
};

/// Dense Jacobian of the residual at `state`, column k = J e_k in packed ordering.
Eigen::MatrixXd dense_jacobian(const StripSolver& solver, const WaveState& state);

/// Smallest `count` singular values of the linearization by block inverse iteration on
/// (J^T J)^{-1} followed by Rayleigh-Ritz.
KernelAnalysis analyze_kernel(const StripSolver& solver, const WaveState& state,
                              const EigenSolution& eig, std::size_t count = 4,
                              int iterations = 40);

struct JacobianCheck {
  std::vector<double> relative_errors;  ///< one per direction
  double max_relative_error = 0.0;
};

/// Analytic Jacobian action against central differences in seeded Gaussian directions.
JacobianCheck check_jacobian(const StripSolver& solver, const WaveState& state, int directions,
                             std::uint64_t seed, double step = 1e-6);

}  // namespace vorwave
