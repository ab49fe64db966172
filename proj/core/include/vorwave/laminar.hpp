#pragma once

#include <cstddef>
#include <vector>

#include "vorwave/vorticity.hpp"

namespace vorwave {

/// Laminar background flow psi'' = -gamma(psi), psi(0) = 0, psi(1) = 1 on a uniform grid.
struct LaminarFlow {
  Vorticity vorticity;
  std::vector<double> y;
  std::vector<double> psi;
  std::vector<double> psi_y;
  double slope0 = 0.0;  ///< psi_y(0) from shooting
  double mu = 0.0;      ///< Bernoulli constant psi_y(1)^2
  double alpha_cr = 0.0;
  double alpha_tilde_cr = 0.0;
  double min_psi_y = 0.0;

  std::size_t size() const noexcept { return y.size(); }
  double h() const { return 1.0 / static_cast<double>(y.size() - 1); }
  double psi_y_top() const { return psi_y.back(); }

  /// Re-integrates with the stored slope on a new uniform grid. Scalars carry over unchanged.
  LaminarFlow resampled(std::size_t ny) const;
};

struct CriticalValues {
  double alpha_cr = 0.0;
  double alpha_tilde_cr = 0.0;
};

struct FroudeNumbers {
  double froude = 0.0;
  double froude_cr = 0.0;
};

inline constexpr std::size_t kDefaultLaminarNy = 4097;
inline constexpr double kMinLaminarSlope = 1e-8;

/// Shooting on psi_y(0) in [1e-6, 50]; throws ModelError if no unidirectional flow exists.
LaminarFlow solve_laminar(const Vorticity& vorticity, std::size_t ny = kDefaultLaminarNy,
                          double tol = 1e-12);

/// alpha_cr = 1 / int dy / psi_y^2 by composite Simpson.
CriticalValues critical_alpha(const LaminarFlow& flow);

FroudeNumbers froude(const LaminarFlow& flow, double alpha);

}  // namespace vorwave
