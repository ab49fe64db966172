#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace vorwave {

/// How the truncated strip is closed laterally.
enum class LateralClosure {
  even_half_strip,  ///< x in [0, L]; even reflection at x = 0, zero Dirichlet at x = L
  free_full_strip,  ///< x in [-L, L]; affine-in-x functions pass the lateral rows untouched
};

struct Grid {
  double L = 40.0;
  std::size_t nx = 201;
  std::size_t ny = 41;
  LateralClosure closure = LateralClosure::even_half_strip;

  double hx() const;
  double hy() const { return 1.0 / static_cast<double>(ny - 1); }
  double x(std::size_t i) const;
  double y(std::size_t j) const { return static_cast<double>(j) * hy(); }

  /// Columns carrying unknowns; the Dirichlet column at x = L is excluded on the half strip.
  std::size_t active_columns() const {
    return closure == LateralClosure::even_half_strip ? nx - 1 : nx;
  }
  std::size_t interior_rows() const { return ny - 2; }
  /// Column holding the crest (x = 0).
  std::size_t crest_column() const {
    return closure == LateralClosure::even_half_strip ? 0 : (nx - 1) / 2;
  }

  /// Throws DomainError on L < 10, nx < 5 or ny < 5.
  void validate() const;
  /// Halves both spacings.
  Grid refined() const;

  bool operator==(const Grid&) const = default;
};

/// Nodal field indexed (i, j) with i along x and j along y.
using Field = Eigen::ArrayXXd;

/// Discrete unknowns (phi, w, alpha) of the strip problem.
struct WaveState {
  Grid grid;
  Field phi;         ///< zero on y = 0, y = 1 and on the x = L column of the half strip
  Eigen::ArrayXd w;  ///< surface elevation at the nx top nodes
  double alpha = 0.0;

  static WaveState trivial(const Grid& grid, double alpha);

  double crest() const { return w(static_cast<Eigen::Index>(grid.crest_column())); }
};

}  // namespace vorwave
