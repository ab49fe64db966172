#pragma once

#include "vorwave/cm_reduction.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/strip_solver.hpp"

namespace vorwave {

/// Largest epsilon accepted by small_amplitude_seed.
inline constexpr double kMaxSeedEpsilon = 0.1;

struct SeedProfile {
  double amplitude = 0.0;  ///< q(0) before the far-field shift
  double decay = 0.0;      ///< sech^2 argument scale
};

/// Homoclinic q(x) = amplitude sech^2(decay x) of the reduced equation.
SeedProfile seed_profile(const CMCoefficients& cm, double epsilon);

/// First-order state theta = q(x) phi0(y) mapped through t_map, alpha = alpha_cr - epsilon.
/// q is shifted so that it vanishes at |x| = L.
WaveState small_amplitude_seed(const StripSolver& solver, const EigenSolution& eig,
                               const CMCoefficients& cm, double epsilon);

WaveState small_amplitude_seed(const LaminarFlow& flow, const EigenSolution& eig,
                               const CMCoefficients& cm, double epsilon, const Grid& grid);

}  // namespace vorwave
