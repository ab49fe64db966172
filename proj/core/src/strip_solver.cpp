#include "vorwave/strip_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SparseLU>

#include "vorwave/errors.hpp"

namespace vorwave {

using Eigen::ArrayXd;
using Eigen::Index;
using Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

struct StripSolver::Factorization {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
};

namespace {

Index idx(std::size_t k) { return static_cast<Index>(k); }

}  // namespace

double Residual::norm() const {
  double n = 0.0;
  if (f1.size() > 0) n = f1.abs().maxCoeff();
  if (f2.size() > 0) n = std::max(n, f2.abs().maxCoeff());
  return n;
}

StripSolver::StripSolver(const Grid& grid, const LaminarFlow& flow) : grid_(grid) {
  grid_.validate();
  if (!(flow.min_psi_y > 0.0)) throw DomainError("strip solver needs a valid laminar flow");
  flow_ = flow.resampled(grid_.ny);
  psi_y_top_ = flow_.psi_y_top();
  mu_ = psi_y_top_ * psi_y_top_;
  flow_.mu = mu_;

  nc_ = grid_.active_columns();
  ny_interior_ = grid_.interior_rows();
  n_phi_ = nc_ * ny_interior_;
  n_w_ = nc_;

  const double hx = grid_.hx();
  const double hy = grid_.hy();
  dx_.rows.assign(nc_, {});
  dxx_.rows.assign(nc_, {});
  auto push = [&](Stencil& s, std::size_t row, std::size_t col, double c) {
    if (col < nc_) s.rows[row].emplace_back(col, c);
  };
  if (grid_.closure == LateralClosure::even_half_strip) {
    push(dxx_, 0, 0, -2.0 / (hx * hx));
    push(dxx_, 0, 1, 2.0 / (hx * hx));
    for (std::size_t i = 1; i < nc_; ++i) {
      push(dx_, i, i - 1, -0.5 / hx);
      push(dx_, i, i + 1, 0.5 / hx);
      push(dxx_, i, i - 1, 1.0 / (hx * hx));
      push(dxx_, i, i, -2.0 / (hx * hx));
      push(dxx_, i, i + 1, 1.0 / (hx * hx));
    }
  } else {
    const std::size_t last = nc_ - 1;
    push(dx_, 0, 0, -1.5 / hx);
    push(dx_, 0, 1, 2.0 / hx);
    push(dx_, 0, 2, -0.5 / hx);
    push(dx_, last, last, 1.5 / hx);
    push(dx_, last, last - 1, -2.0 / hx);
    push(dx_, last, last - 2, 0.5 / hx);
    for (std::size_t i = 1; i < last; ++i) {
      push(dx_, i, i - 1, -0.5 / hx);
      push(dx_, i, i + 1, 0.5 / hx);
      push(dxx_, i, i - 1, 1.0 / (hx * hx));
      push(dxx_, i, i, -2.0 / (hx * hx));
      push(dxx_, i, i + 1, 1.0 / (hx * hx));
    }
  }

  std::vector<Triplet> entries;
  entries.reserve(n_phi_ * 7);
  const double cy = 1.0 / (hy * hy);
  for (std::size_t i = 0; i < nc_; ++i) {
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j) {
      const Index row = phi_index(i, j);
      for (const auto& [col, c] : dxx_.rows[i]) entries.emplace_back(row, phi_index(col, j), c);
      entries.emplace_back(row, row, -2.0 * cy);
      if (j > 1) entries.emplace_back(row, phi_index(i, j - 1), cy);
      if (j + 2 < grid_.ny) entries.emplace_back(row, phi_index(i, j + 1), cy);
    }
  }
  laplacian_.resize(idx(n_phi_), idx(n_phi_));
  laplacian_.setFromTriplets(entries.begin(), entries.end());
  laplacian_.makeCompressed();

  auto factor = std::make_shared<Factorization>();
  factor->lu.compute(laplacian_);
  if (factor->lu.info() != Eigen::Success)
    throw NumericError("factorization of the discrete Laplacian failed");
  laplacian_lu_ = std::move(factor);
}

VectorXd StripSolver::laplacian_solve(const VectorXd& rhs) const {
  VectorXd out = laplacian_lu_->lu.solve(rhs);
  if (laplacian_lu_->lu.info() != Eigen::Success || !out.allFinite())
    throw NumericError("sparse Laplacian solve failed");
  return out;
}

VectorXd StripSolver::gather_interior(const Field& f) const {
  VectorXd v(idx(n_phi_));
  for (std::size_t i = 0; i < nc_; ++i)
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j) v[phi_index(i, j)] = f(idx(i), idx(j));
  return v;
}

Field StripSolver::scatter_interior(const VectorXd& v) const {
  Field f = Field::Zero(idx(grid_.nx), idx(grid_.ny));
  for (std::size_t i = 0; i < nc_; ++i)
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j) f(idx(i), idx(j)) = v[phi_index(i, j)];
  return f;
}

double StripSolver::dx_at(const ArrayXd& row_values, std::size_t i) const {
  double s = 0.0;
  for (const auto& [col, c] : dx_.rows[i]) s += c * row_values(idx(col));
  return s;
}

Field StripSolver::x_derivative(const Field& f) const {
  Field out = Field::Zero(f.rows(), f.cols());
  const double hx = grid_.hx();
  for (std::size_t j = 0; j < grid_.ny; ++j) {
    const ArrayXd row = f.col(idx(j));
    for (std::size_t i = 0; i < nc_; ++i) out(idx(i), idx(j)) = dx_at(row, i);
    if (nc_ < grid_.nx) {
      const std::size_t i = grid_.nx - 1;
      out(idx(i), idx(j)) =
          (3.0 * row(idx(i)) - 4.0 * row(idx(i - 1)) + row(idx(i - 2))) / (2.0 * hx);
    }
  }
  return out;
}

Field StripSolver::y_derivative(const Field& f) const {
  Field out(f.rows(), f.cols());
  const double hy = grid_.hy();
  const Index last = idx(grid_.ny - 1);
  for (Index i = 0; i < f.rows(); ++i) {
    out(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * hy);
    for (Index j = 1; j < last; ++j) out(i, j) = (f(i, j + 1) - f(i, j - 1)) / (2.0 * hy);
    out(i, last) = (3.0 * f(i, last) - 4.0 * f(i, last - 1) + f(i, last - 2)) / (2.0 * hy);
  }
  return out;
}

void StripSolver::check_state(const WaveState& state) const {
  if (!(state.grid == grid_)) throw DomainError("state grid does not match the solver grid");
  if (state.phi.rows() != idx(grid_.nx) || state.phi.cols() != idx(grid_.ny) ||
      state.w.size() != idx(grid_.nx))
    throw DomainError("state arrays do not match the grid");
  if (!state.phi.allFinite() || !state.w.allFinite() || !std::isfinite(state.alpha))
    throw DomainError("state contains non-finite values");
}

Field StripSolver::harmonic_extension(const ArrayXd& w) const {
  if (w.size() != idx(grid_.nx)) throw DomainError("boundary data does not match the grid");
  if (!w.allFinite()) throw DomainError("boundary data is not finite");
  const double hy = grid_.hy();
  VectorXd rhs = VectorXd::Zero(idx(n_phi_));
  for (std::size_t i = 0; i < nc_; ++i) rhs[phi_index(i, grid_.ny - 2)] = -w(idx(i)) / (hy * hy);
  Field zeta = scatter_interior(laplacian_solve(rhs));
  for (std::size_t i = 0; i < nc_; ++i) zeta(idx(i), idx(grid_.ny - 1)) = w(idx(i));
  return zeta;
}

Field StripSolver::apply_A(const WaveState& state) const {
  check_state(state);
  const Field zeta = harmonic_extension(state.w);
  const double hy = grid_.hy();
  VectorXd rhs(idx(n_phi_));
  for (std::size_t i = 0; i < nc_; ++i) {
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j) {
      const double zx = dx_at(zeta.col(idx(j)), i);
      const double zy = (zeta(idx(i), idx(j + 1)) - zeta(idx(i), idx(j - 1))) / (2.0 * hy);
      const double base = flow_.psi[j];
      const double g = zx * zx + (1.0 + zy) * (1.0 + zy);
      rhs[phi_index(i, j)] =
          -vorticity().eval(state.phi(idx(i), idx(j)) + base, 0) * g + vorticity().eval(base, 0);
    }
  }
  return scatter_interior(laplacian_solve(rhs));
}

Residual StripSolver::residual(const WaveState& state) const {
  check_state(state);
  const Field zeta = harmonic_extension(state.w);
  const Field a = apply_A(state);
  const double hy = grid_.hy();
  const std::size_t top = grid_.ny - 1;

  Residual r;
  r.f1 = Field::Zero(idx(grid_.nx), idx(grid_.ny));
  for (std::size_t i = 0; i < nc_; ++i)
    for (std::size_t j = 1; j < top; ++j)
      r.f1(idx(i), idx(j)) = state.phi(idx(i), idx(j)) - a(idx(i), idx(j));

  r.f2 = ArrayXd::Zero(idx(grid_.nx));
  for (std::size_t i = 0; i < nc_; ++i) {
    const double wx = dx_at(state.w, i);
    const double zy = (3.0 * state.w(idx(i)) - 4.0 * zeta(idx(i), idx(top - 1)) +
                       zeta(idx(i), idx(top - 2))) /
                      (2.0 * hy);
    const double ay = (-4.0 * a(idx(i), idx(top - 1)) + a(idx(i), idx(top - 2))) / (2.0 * hy);
    const double g = wx * wx + (1.0 + zy) * (1.0 + zy);
    const double head = ay + psi_y_top_;
    r.f2(idx(i)) = 0.5 * head * head - (0.5 * mu_ - state.alpha * state.w(idx(i))) * g;
  }
  return r;
}

Admissibility StripSolver::admissibility(const WaveState& state) const {
  check_state(state);
  const DerivedFields f = fields(state);
  Admissibility out{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  const Index top = idx(grid_.ny - 1);
  for (Index i = 0; i < idx(grid_.nx); ++i) {
    const double head = mu_ - 2.0 * state.alpha * state.w(i);
    for (Index j = 0; j <= top; ++j) {
      const double g = f.eta_x(i, j) * f.eta_x(i, j) + f.eta_y(i, j) * f.eta_y(i, j);
      out.sigma_domain = std::min(out.sigma_domain, head * g);
      if (j == top) out.sigma_surface = std::min(out.sigma_surface, head * g);
    }
  }
  return out;
}

DerivedFields StripSolver::fields(const WaveState& state) const {
  check_state(state);
  DerivedFields f;
  f.zeta = harmonic_extension(state.w);
  f.eta = f.zeta;
  f.psi = state.phi;
  for (std::size_t j = 0; j < grid_.ny; ++j) {
    f.eta.col(idx(j)) += grid_.y(j);
    f.psi.col(idx(j)) += flow_.psi[j];
  }
  f.eta_x = x_derivative(f.zeta);
  f.eta_y = y_derivative(f.zeta) + 1.0;
  f.psi_x = x_derivative(state.phi);
  f.psi_y = y_derivative(state.phi);
  for (std::size_t j = 0; j < grid_.ny; ++j) f.psi_y.col(idx(j)) += flow_.psi_y[j];
  return f;
}

Residual StripSolver::jacobian_apply(const WaveState& state, const Field& phi_dot,
                                     const ArrayXd& w_dot, double alpha_dot) const {
  check_state(state);
  const Field zeta = harmonic_extension(state.w);
  const Field zeta_dot = harmonic_extension(w_dot);
  const Field a = apply_A(state);
  const double hy = grid_.hy();
  const std::size_t top = grid_.ny - 1;

  VectorXd rhs(idx(n_phi_));
  for (std::size_t i = 0; i < nc_; ++i) {
    for (std::size_t j = 1; j < top; ++j) {
      const Index ii = idx(i), jj = idx(j);
      const double zx = dx_at(zeta.col(jj), i);
      const double zy = (zeta(ii, jj + 1) - zeta(ii, jj - 1)) / (2.0 * hy);
      const double zdx = dx_at(zeta_dot.col(jj), i);
      const double zdy = (zeta_dot(ii, jj + 1) - zeta_dot(ii, jj - 1)) / (2.0 * hy);
      const double psi = state.phi(ii, jj) + flow_.psi[j];
      const double g = zx * zx + (1.0 + zy) * (1.0 + zy);
      rhs[phi_index(i, j)] = -vorticity().eval(psi, 1) * g * phi_dot(ii, jj) -
                             2.0 * vorticity().eval(psi, 0) * (zx * zdx + (1.0 + zy) * zdy);
    }
  }
  const Field a_dot = scatter_interior(laplacian_solve(rhs));

  Residual out;
  out.f1 = Field::Zero(idx(grid_.nx), idx(grid_.ny));
  for (std::size_t i = 0; i < nc_; ++i)
    for (std::size_t j = 1; j < top; ++j)
      out.f1(idx(i), idx(j)) = phi_dot(idx(i), idx(j)) - a_dot(idx(i), idx(j));

  out.f2 = ArrayXd::Zero(idx(grid_.nx));
  const Index t = idx(top);
  for (std::size_t i = 0; i < nc_; ++i) {
    const Index ii = idx(i);
    const double wx = dx_at(state.w, i);
    const double wdx = dx_at(w_dot, i);
    const double zy = (3.0 * state.w(ii) - 4.0 * zeta(ii, t - 1) + zeta(ii, t - 2)) / (2.0 * hy);
    const double zdy =
        (3.0 * w_dot(ii) - 4.0 * zeta_dot(ii, t - 1) + zeta_dot(ii, t - 2)) / (2.0 * hy);
    const double ay = (-4.0 * a(ii, t - 1) + a(ii, t - 2)) / (2.0 * hy);
    const double ady = (-4.0 * a_dot(ii, t - 1) + a_dot(ii, t - 2)) / (2.0 * hy);
    const double g = wx * wx + (1.0 + zy) * (1.0 + zy);
    const double head = mu_ - 2.0 * state.alpha * state.w(ii);
    out.f2(ii) = (ay + psi_y_top_) * ady + state.alpha * g * w_dot(ii) -
                 head * (wx * wdx + (1.0 + zy) * zdy) + alpha_dot * state.w(ii) * g;
  }
  return out;
}

ArrayXd StripSolver::surface_head(const Field& a) const {
  const double hy = grid_.hy();
  const Index t = idx(grid_.ny - 1);
  ArrayXd p = ArrayXd::Zero(idx(grid_.nx));
  for (std::size_t i = 0; i < nc_; ++i)
    p(idx(i)) = (-4.0 * a(idx(i), t - 1) + a(idx(i), t - 2)) / (2.0 * hy) + psi_y_top_;
  return p;
}

NewtonDirection StripSolver::newton_direction(const WaveState& state, const Residual& res,
                                              const std::optional<ArclengthRow>& row) const {
  check_state(state);
  const double hy = grid_.hy();
  const Index t = idx(grid_.ny - 1);
  const ArrayXd p = surface_head(apply_A(state));
  // -(Lap F1) = R - Lap phi
  VectorXd rhs_phi = -(laplacian_ * gather_interior(res.f1));
  ArrayXd rhs_surface = ArrayXd::Zero(idx(grid_.nx));
  for (std::size_t i = 0; i < nc_; ++i) {
    const Index ii = idx(i);
    const double f1_y = (-4.0 * res.f1(ii, t - 1) + res.f1(ii, t - 2)) / (2.0 * hy);
    rhs_surface(ii) = -res.f2(ii) - p(ii) * f1_y;
  }
  return solve_linearized(state, rhs_phi, rhs_surface, row);
}

NewtonDirection StripSolver::parameter_sensitivity(const WaveState& state) const {
  check_state(state);
  const DerivedFields f = fields(state);
  const Index t = idx(grid_.ny - 1);
  ArrayXd rhs_surface = ArrayXd::Zero(idx(grid_.nx));
  for (std::size_t i = 0; i < nc_; ++i) {
    const Index ii = idx(i);
    const double g = f.eta_x(ii, t) * f.eta_x(ii, t) + f.eta_y(ii, t) * f.eta_y(ii, t);
    rhs_surface(ii) = -state.w(ii) * g;
  }
  NewtonDirection d =
      solve_linearized(state, VectorXd::Zero(idx(n_phi_)), rhs_surface, std::nullopt);
  d.alpha = 1.0;
  return d;
}

// Unknown layout: [phi_dot | w_dot | zeta_dot | alpha_dot?]
NewtonDirection StripSolver::solve_linearized(const WaveState& state, const VectorXd& rhs_phi,
                                              const ArrayXd& rhs_surface,
                                              const std::optional<ArclengthRow>& row) const {
  const double hy = grid_.hy();
  const std::size_t top = grid_.ny - 1;
  const Index t = idx(top);
  const Field zeta = harmonic_extension(state.w);
  const ArrayXd p = surface_head(apply_A(state));

  const Index off_w = idx(n_phi_);
  const Index off_z = idx(n_phi_ + n_w_);
  const Index off_alpha = idx(2 * n_phi_ + n_w_);
  const Index n_total = off_alpha + (row ? 1 : 0);
  auto zeta_col = [&](std::size_t i, std::size_t j) { return off_z + phi_index(i, j); };

  std::vector<Triplet> e;
  e.reserve(laplacian_.nonZeros() * 2 + n_phi_ * 8 + n_w_ * 12);
  VectorXd rhs = VectorXd::Zero(n_total);
  rhs.head(idx(n_phi_)) = rhs_phi;

  for (Index k = 0; k < laplacian_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(laplacian_, k); it; ++it) {
      e.emplace_back(it.row(), it.col(), it.value());
      e.emplace_back(off_z + it.row(), off_z + it.col(), it.value());
    }
  }

  for (std::size_t i = 0; i < nc_; ++i) {
    for (std::size_t j = 1; j < top; ++j) {
      const Index ii = idx(i), jj = idx(j);
      const Index r = phi_index(i, j);
      const double zx = dx_at(zeta.col(jj), i);
      const double zy = (zeta(ii, jj + 1) - zeta(ii, jj - 1)) / (2.0 * hy);
      const double psi = state.phi(ii, jj) + flow_.psi[j];
      const double g = zx * zx + (1.0 + zy) * (1.0 + zy);
      const double gam = vorticity().eval(psi, 0);

      // Lap phi_dot - R_dot
      e.emplace_back(r, r, vorticity().eval(psi, 1) * g);
      for (const auto& [col, c] : dx_.rows[i])
        e.emplace_back(r, zeta_col(col, j), 2.0 * gam * zx * c);
      const double cy = gam * (1.0 + zy) / hy;
      if (j + 1 == top)
        e.emplace_back(r, off_w + ii, cy);
      else
        e.emplace_back(r, zeta_col(i, j + 1), cy);
      if (j > 1) e.emplace_back(r, zeta_col(i, j - 1), -cy);

      // harmonic extension of w_dot
      if (j + 1 == top) e.emplace_back(off_z + r, off_w + ii, 1.0 / (hy * hy));
    }
  }

  for (std::size_t i = 0; i < nc_; ++i) {
    const Index ii = idx(i);
    const Index r = off_w + ii;
    const double wx = dx_at(state.w, i);
    const double zy = (3.0 * state.w(ii) - 4.0 * zeta(ii, t - 1) + zeta(ii, t - 2)) / (2.0 * hy);
    const double g = wx * wx + (1.0 + zy) * (1.0 + zy);
    const double head = mu_ - 2.0 * state.alpha * state.w(ii);

    e.emplace_back(r, phi_index(i, top - 1), -2.0 * p(ii) / hy);
    e.emplace_back(r, phi_index(i, top - 2), 0.5 * p(ii) / hy);
    e.emplace_back(r, r, state.alpha * g - 1.5 * head * (1.0 + zy) / hy);
    for (const auto& [col, c] : dx_.rows[i]) e.emplace_back(r, off_w + idx(col), -head * wx * c);
    e.emplace_back(r, zeta_col(i, top - 1), 2.0 * head * (1.0 + zy) / hy);
    e.emplace_back(r, zeta_col(i, top - 2), -0.5 * head * (1.0 + zy) / hy);
    if (row) e.emplace_back(r, off_alpha, state.w(ii) * g);
    rhs[r] = rhs_surface(ii);
  }
  if (row) {
    e.emplace_back(off_alpha, off_w + idx(grid_.crest_column()), row->crest_weight);
    e.emplace_back(off_alpha, off_alpha, row->alpha_weight);
    rhs[off_alpha] = row->rhs;
  }

  SparseMatrix m(n_total, n_total);
  m.setFromTriplets(e.begin(), e.end());
  m.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success)
    throw SingularJacobianError("linearized strip system is singular: " + lu.lastErrorMessage());
  const VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !sol.allFinite())
    throw SingularJacobianError("linearized strip solve produced non-finite values");

  NewtonDirection d;
  d.phi = scatter_interior(sol.head(idx(n_phi_)));
  d.w = ArrayXd::Zero(idx(grid_.nx));
  for (std::size_t i = 0; i < nc_; ++i) d.w(idx(i)) = sol[off_w + idx(i)];
  d.alpha = row ? sol[off_alpha] : 0.0;
  return d;
}

WaveState StripSolver::add(const WaveState& state, const NewtonDirection& d, double step) const {
  WaveState out = state;
  out.phi += step * d.phi;
  out.w += step * d.w;
  out.alpha += step * d.alpha;
  return out;
}

NewtonReport StripSolver::newton_solve(const WaveState& initial, const NewtonOptions& options) const {
  check_state(initial);
  if (!(admissibility(initial).sigma_surface > 0.0))
    throw AdmissibilityError("initial state violates the surface admissibility condition");

  NewtonReport report;
  report.state = initial;
  Residual res = residual(report.state);
  double norm = res.norm();
  report.history.push_back(norm);
  for (int it = 0; it < options.max_iter; ++it) {
    if (norm <= options.tol) {
      report.iterations = it;
      report.residual = norm;
      return report;
    }
    const NewtonDirection d = newton_direction(report.state, res);
    double step = 1.0;
    std::optional<WaveState> best;
    Residual best_res;
    double best_norm = std::numeric_limits<double>::infinity();
    bool admissible_seen = false;
    for (int h = 0; h <= options.max_halvings; ++h, step *= 0.5) {
      WaveState trial = add(report.state, d, step);
      if (!trial.phi.allFinite() || !trial.w.allFinite()) continue;
      if (!(admissibility(trial).sigma_surface > 0.0)) continue;
      admissible_seen = true;
      Residual trial_res = residual(trial);
      const double trial_norm = trial_res.norm();
      if (!std::isfinite(trial_norm)) continue;
      if (trial_norm < best_norm) {
        best = std::move(trial);
        best_res = std::move(trial_res);
        best_norm = trial_norm;
      }
      if (trial_norm <= (1.0 - 1e-4 * step) * norm) break;
    }
    if (!admissible_seen)
      throw AdmissibilityError("Newton step halving could not restore admissibility");
    report.state = std::move(*best);
    res = std::move(best_res);
    norm = best_norm;
    report.history.push_back(norm);
  }
  if (norm <= options.tol) {
    report.iterations = options.max_iter;
    report.residual = norm;
    return report;
  }
  std::ostringstream msg;
  msg << "Newton did not converge in " << options.max_iter << " iterations (residual " << norm
      << ")";
  throw NonConvergenceError(msg.str(), norm, options.max_iter);
}

std::pair<Field, ArrayXd> StripSolver::t_map(const Field& theta) const {
  if (theta.rows() != idx(grid_.nx) || theta.cols() != idx(grid_.ny))
    throw DomainError("theta does not match the grid");
  const Index top = idx(grid_.ny - 1);
  ArrayXd theta_top = theta.col(top);
  if (nc_ < grid_.nx) theta_top(idx(grid_.nx - 1)) = 0.0;
  const Field zeta = harmonic_extension(theta_top);
  Field phi = Field::Zero(theta.rows(), theta.cols());
  for (std::size_t i = 0; i < nc_; ++i)
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j)
      phi(idx(i), idx(j)) =
          theta(idx(i), idx(j)) - flow_.psi_y[j] / psi_y_top_ * zeta(idx(i), idx(j));
  ArrayXd w = -theta_top / psi_y_top_;
  return {std::move(phi), std::move(w)};
}

Field StripSolver::t_map_inverse(const Field& phi, const ArrayXd& w) const {
  const Field zeta = harmonic_extension(w);
  Field theta = phi;
  for (std::size_t j = 0; j < grid_.ny; ++j) theta.col(idx(j)) -= flow_.psi_y[j] * zeta.col(idx(j));
  return theta;
}

Field StripSolver::transformation_identity_defect(const ArrayXd& theta_top) const {
  const Field zeta = harmonic_extension(theta_top);
  const double hy = grid_.hy();
  VectorXd rhs(idx(n_phi_));
  for (std::size_t i = 0; i < nc_; ++i) {
    for (std::size_t j = 1; j + 1 < grid_.ny; ++j) {
      const Index ii = idx(i), jj = idx(j);
      const double zy = (zeta(ii, jj + 1) - zeta(ii, jj - 1)) / (2.0 * hy);
      const double base = flow_.psi[j];
      rhs[phi_index(i, j)] = -2.0 * vorticity().eval(base, 0) * zy -
                             vorticity().eval(base, 1) * flow_.psi_y[j] * zeta(ii, jj);
    }
  }
  Field defect = scatter_interior(laplacian_solve(rhs));
  for (std::size_t j = 0; j < grid_.ny; ++j)
    defect.col(idx(j)) -= (flow_.psi_y[j] - psi_y_top_) * zeta.col(idx(j));
  return defect;
}

VectorXd StripSolver::pack(const Field& phi, const ArrayXd& w) const {
  VectorXd x(idx(n_phi_ + n_w_));
  x.head(idx(n_phi_)) = gather_interior(phi);
  for (std::size_t i = 0; i < nc_; ++i) x[idx(n_phi_ + i)] = w(idx(i));
  return x;
}

std::pair<Field, ArrayXd> StripSolver::unpack(const VectorXd& x) const {
  if (x.size() != idx(n_phi_ + n_w_)) throw DomainError("packed vector has the wrong size");
  Field phi = scatter_interior(x.head(idx(n_phi_)));
  ArrayXd w = ArrayXd::Zero(idx(grid_.nx));
  for (std::size_t i = 0; i < nc_; ++i) w(idx(i)) = x[idx(n_phi_ + i)];
  return {std::move(phi), std::move(w)};
}

}  // namespace vorwave
