#include "vorwave/seed.hpp"

#include <cmath>
#include <sstream>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

}  // namespace

SeedProfile seed_profile(const CMCoefficients& cm, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > kMaxSeedEpsilon) {
    std::ostringstream msg;
    msg << "epsilon " << epsilon << " outside (0, " << kMaxSeedEpsilon << "]";
    throw DomainError(msg.str());
  }
  if (!(cm.f101 > 0.0) || cm.f200 == 0.0) throw DomainError("invalid reduced coefficients");
  SeedProfile s;
  s.amplitude = -1.5 * epsilon * cm.f101 / cm.f200;
  s.decay = 0.5 * std::sqrt(epsilon * cm.f101);
  return s;
}

WaveState small_amplitude_seed(const StripSolver& solver, const EigenSolution& eig,
                               const CMCoefficients& cm, double epsilon) {
  const SeedProfile prof = seed_profile(cm, epsilon);
  if (!(epsilon < solver.alpha_cr()))
    throw DomainError("epsilon must stay below alpha_cr");
  const Grid& grid = solver.grid();
  const double tail = prof.amplitude * sech2(prof.decay * grid.L);
  Field theta(static_cast<Eigen::Index>(grid.nx), static_cast<Eigen::Index>(grid.ny));
  const std::vector<double> phi0_grid = phi0_on_grid(eig, grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    const double phi0 = phi0_grid[j];
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double q = prof.amplitude * sech2(prof.decay * grid.x(i)) - tail;
      theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = q * phi0;
    }
  }
  auto [phi, w] = solver.t_map(theta);
  WaveState s;
  s.grid = grid;
  s.phi = std::move(phi);
  s.w = std::move(w);
  s.alpha = solver.alpha_cr() - epsilon;
  return s;
}

WaveState small_amplitude_seed(const LaminarFlow& flow, const EigenSolution& eig,
                               const CMCoefficients& cm, double epsilon, const Grid& grid) {
  seed_profile(cm, epsilon);
  const StripSolver solver(grid, flow);
  return small_amplitude_seed(solver, eig, cm, epsilon);
}

}  // namespace vorwave
