#include "vorwave/grid.hpp"

#include <cmath>

#include "vorwave/errors.hpp"

namespace vorwave {

double Grid::hx() const {
  const double span = closure == LateralClosure::even_half_strip ? L : 2.0 * L;
  return span / static_cast<double>(nx - 1);
}

double Grid::x(std::size_t i) const {
  const double offset = closure == LateralClosure::even_half_strip ? 0.0 : -L;
  return offset + static_cast<double>(i) * hx();
}

void Grid::validate() const {
  if (!std::isfinite(L) || L < 10.0) throw DomainError("grid half-length L must be at least 10");
  if (nx < 5 || ny < 5) throw DomainError("grid needs at least 5 nodes in each direction");
}

Grid Grid::refined() const {
  Grid g = *this;
  g.nx = 2 * nx - 1;
  g.ny = 2 * ny - 1;
  return g;
}

WaveState WaveState::trivial(const Grid& grid, double alpha) {
  grid.validate();
  WaveState s;
  s.grid = grid;
  s.phi = Field::Zero(static_cast<Eigen::Index>(grid.nx), static_cast<Eigen::Index>(grid.ny));
  s.w = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(grid.nx));
  s.alpha = alpha;
  return s;
}

}  // namespace vorwave
