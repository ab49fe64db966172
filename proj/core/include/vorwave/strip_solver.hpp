#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "vorwave/grid.hpp"
#include "vorwave/laminar.hpp"

namespace vorwave {

/// F1 on the active interior nodes (zero elsewhere) and F2 on the active top nodes.
struct Residual {
  Field f1;
  Eigen::ArrayXd f2;

  double norm() const;  ///< sup norm over both components
};

struct Admissibility {
  double sigma_surface = 0.0;  ///< inf over the top of (mu - 2 alpha w) |grad eta|^2
  double sigma_domain = 0.0;   ///< same over every node
};

/// Nodal fields derived from a state; derivatives use the residual's stencils on the top row.
struct DerivedFields {
  Field zeta, eta, psi;
  Field eta_x, eta_y, psi_x, psi_y;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 20;
  int max_halvings = 20;
};

struct NewtonReport {
  WaveState state;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;  ///< residual norm before every iteration and at exit
};

/// Extra linear constraint appended to the Newton system when alpha is an unknown.
struct ArclengthRow {
  double crest_weight = 0.0;  ///< coefficient of the crest increment
  double alpha_weight = 0.0;  ///< coefficient of the alpha increment
  double rhs = 0.0;
};

/// Increment of all unknowns from one linearized solve.
struct NewtonDirection {
  Field phi;
  Eigen::ArrayXd w;
  double alpha = 0.0;
};

/// Finite-difference discretization of the conformal strip problem for one grid and one laminar flow.
/// Immutable after construction; all members are reentrant.
class StripSolver {
 public:
  StripSolver(const Grid& grid, const LaminarFlow& flow);

  const Grid& grid() const noexcept { return grid_; }
  /// Laminar flow sampled on the grid's y nodes.
  const LaminarFlow& flow() const noexcept { return flow_; }
  const Vorticity& vorticity() const noexcept { return flow_.vorticity; }
  double mu() const noexcept { return mu_; }
  double psi_y_top() const noexcept { return psi_y_top_; }
  double alpha_cr() const noexcept { return flow_.alpha_cr; }

  /// Zeta with zeta = w on top and 0 on the bottom under the grid's lateral closure.
  Field harmonic_extension(const Eigen::ArrayXd& w) const;
  Field apply_A(const WaveState& state) const;
  Residual residual(const WaveState& state) const;
  Admissibility admissibility(const WaveState& state) const;
  DerivedFields fields(const WaveState& state) const;

  /// Directional derivative of the residual; alpha_dot enters through F2 only.
  Residual jacobian_apply(const WaveState& state, const Field& phi_dot, const Eigen::ArrayXd& w_dot,
                          double alpha_dot = 0.0) const;

  /// Solves J d = -F. With `row`, alpha becomes an unknown and `row` closes the system.
  NewtonDirection newton_direction(const WaveState& state, const Residual& residual,
                                   const std::optional<ArclengthRow>& row = std::nullopt) const;
  /// Solves J d = -alpha_dot * dF/dalpha for the (phi, w) part of a tangent.
  NewtonDirection parameter_sensitivity(const WaveState& state) const;

  /// Damped Newton at fixed alpha; halves the step while the surface admissibility fails.
  NewtonReport newton_solve(const WaveState& initial, const NewtonOptions& options = {}) const;

  /// Good-unknown map: theta -> (theta - psi_y zeta[theta_top] / psi_y(1), -theta_top / psi_y(1)).
  std::pair<Field, Eigen::ArrayXd> t_map(const Field& theta) const;
  Field t_map_inverse(const Field& phi, const Eigen::ArrayXd& w) const;

  /// Nodal defect of A_w(theta_top) + A_phi(psi_y zeta) - (psi_y - psi_y(1)) zeta at the trivial state.
  Field transformation_identity_defect(const Eigen::ArrayXd& theta_top) const;

  /// Number of (phi, w) unknowns.
  std::size_t unknowns() const noexcept { return n_phi_ + n_w_; }
  Eigen::VectorXd pack(const Field& phi, const Eigen::ArrayXd& w) const;
  std::pair<Field, Eigen::ArrayXd> unpack(const Eigen::VectorXd& x) const;
  Eigen::VectorXd pack(const Residual& r) const { return pack(r.f1, r.f2); }

  WaveState add(const WaveState& state, const NewtonDirection& d, double step) const;

 private:
  struct Factorization;
  struct Stencil {
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  };

  Eigen::Index phi_index(std::size_t i, std::size_t j) const {
    return static_cast<Eigen::Index>(i * ny_interior_ + (j - 1));
  }
  Eigen::VectorXd laplacian_solve(const Eigen::VectorXd& rhs) const;
  Eigen::VectorXd gather_interior(const Field& f) const;
  Field scatter_interior(const Eigen::VectorXd& v) const;
  double dx_at(const Eigen::ArrayXd& row_values, std::size_t i) const;
  Field x_derivative(const Field& f) const;
  Field y_derivative(const Field& f) const;
  void check_state(const WaveState& state) const;
  /// Top-row P = A_y + psi_y(1) with the residual's one-sided stencil.
  Eigen::ArrayXd surface_head(const Field& a) const;
  /// Coupled sparse solve for (phi_dot, w_dot[, alpha_dot]); rhs_phi is the Laplacian-scaled F1 row.
  NewtonDirection solve_linearized(const WaveState& state, const Eigen::VectorXd& rhs_phi,
                                   const Eigen::ArrayXd& rhs_surface,
                                   const std::optional<ArclengthRow>& row) const;

  Grid grid_;
  LaminarFlow flow_;
  double mu_ = 0.0;
  double psi_y_top_ = 0.0;
  std::size_t nc_ = 0;
  std::size_t ny_interior_ = 0;
  std::size_t n_phi_ = 0;
  std::size_t n_w_ = 0;
  Stencil dx_;
  Stencil dxx_;
  Eigen::SparseMatrix<double> laplacian_;
  std::shared_ptr<const Factorization> laplacian_lu_;
};

}  // namespace vorwave
