#include "vorwave/kernel_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "vorwave/errors.hpp"

namespace vorwave {

Eigen::MatrixXd dense_jacobian(const StripSolver& solver, const WaveState& state) {
  const auto n = static_cast<Eigen::Index>(solver.unknowns());
  Eigen::MatrixXd j(n, n);
#ifdef VORWAVE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[k] = 1.0;
    const auto [phi_dot, w_dot] = solver.unpack(e);
    j.col(k) = solver.pack(solver.jacobian_apply(state, phi_dot, w_dot));
  }
  return j;
}

namespace {

double cosine_to_span(const Eigen::VectorXd& v, const Eigen::MatrixXd& basis) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(basis.rows(), basis.cols());
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  return (q.transpose() * v).norm() / nv;
}

}  // namespace

KernelAnalysis analyze_kernel(const StripSolver& solver, const WaveState& state,
                              const EigenSolution& eig, std::size_t count, int iterations) {
  if (count == 0) throw DomainError("kernel analysis needs at least one mode");
  const Eigen::MatrixXd jac = dense_jacobian(solver, state);
  const Eigen::Index n = jac.rows();
  const auto k = static_cast<Eigen::Index>(count);
  if (k > n) throw DomainError("more modes requested than unknowns");
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);

  Eigen::MatrixXd block(n, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      block(r, c) = std::sin(0.37 * static_cast<double>((r + 1) * (c + 1))) +
                    0.1 * std::cos(1.3 * static_cast<double>(r + 2 * c));
  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXd next = lu.transpose().solve(block);
    next = lu.solve(next);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(next);
    block = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  }
  if (!block.allFinite()) throw NumericError("inverse iteration produced non-finite values");

  // Rayleigh-Ritz on span(block): singular values of J restricted to it
  const Eigen::MatrixXd image = jac * block;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(image, Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const Eigen::MatrixXd right = block * svd.matrixV();

  const Grid& grid = solver.grid();
  const std::vector<double> phi0 = phi0_on_grid(eig, grid.ny);
  const Eigen::Index nodes = static_cast<Eigen::Index>(grid.nx * grid.ny);
  Eigen::MatrixXd basis(nodes, 2);
  for (std::size_t i = 0; i < grid.nx; ++i)
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const auto r = static_cast<Eigen::Index>(j * grid.nx + i);
      basis(r, 0) = phi0[j];
      basis(r, 1) = grid.x(i) * phi0[j];
    }

  KernelAnalysis out;
  for (Eigen::Index c = k - 1; c >= 0; --c) {
    out.singular_values.push_back(sv[c]);
    const auto [phi, w] = solver.unpack(right.col(c));
    const Field theta = solver.t_map_inverse(phi, w);
    Eigen::VectorXd flat(nodes);
    for (std::size_t i = 0; i < grid.nx; ++i)
      for (std::size_t j = 0; j < grid.ny; ++j)
        flat[static_cast<Eigen::Index>(j * grid.nx + i)] =
            theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    out.span_correlation.push_back(cosine_to_span(flat, basis));
    out.phi0_correlation.push_back(cosine_to_span(flat, basis.leftCols(1)));
  }
  return out;
}

JacobianCheck check_jacobian(const StripSolver& solver, const WaveState& state, int directions,
                             std::uint64_t seed, double step) {
  if (directions < 1 || !(step > 0.0)) throw DomainError("invalid Jacobian check settings");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(solver.unknowns());
  JacobianCheck out;
  for (int d = 0; d < directions; ++d) {
    Eigen::VectorXd dir(n);
    for (Eigen::Index k = 0; k < n; ++k) dir[k] = normal(rng);
    const auto [phi_dot, w_dot] = solver.unpack(dir);
    WaveState plus = state, minus = state;
    plus.phi += step * phi_dot;
    plus.w += step * w_dot;
    minus.phi -= step * phi_dot;
    minus.w -= step * w_dot;
    const Eigen::VectorXd fd =
        (solver.pack(solver.residual(plus)) - solver.pack(solver.residual(minus))) / (2.0 * step);
    const Eigen::VectorXd an = solver.pack(solver.jacobian_apply(state, phi_dot, w_dot));
    const double err = (fd - an).norm() / std::max(an.norm(), 1e-300);
    out.relative_errors.push_back(err);
    out.max_relative_error = std::max(out.max_relative_error, err);
  }
  return out;
}

}  // namespace vorwave
