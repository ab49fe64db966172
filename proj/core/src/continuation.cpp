#include "vorwave/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vorwave/diagnostics.hpp"

namespace vorwave {

namespace {

using Eigen::Index;

struct Direction {
  Field phi;
  Eigen::ArrayXd w;
  double alpha = 0.0;
};

double weighted_norm(const ContinuationConfig& c, double d_crest, double d_alpha) {
  return std::sqrt(c.crest_weight * d_crest * d_crest + c.alpha_weight * d_alpha * d_alpha);
}

std::optional<Termination> check_thresholds(const Monitors& m, const MonitorThresholds& t) {
  if (m.sigma_surface < t.sigma_surface) return Termination{"stagnation approach", "sigma_surface", m.sigma_surface};
  if (m.grad_eta_min < t.grad_eta_min) return Termination{"conformal degeneracy", "grad_eta_min", m.grad_eta_min};
  if (m.alpha < t.alpha) return Termination{"vanishing gravity", "alpha", m.alpha};
  if (m.alpha_gap < t.alpha_gap) return Termination{"return to criticality", "alpha_gap", m.alpha_gap};
  if (m.grad_eta_max > t.grad_eta_max) return Termination{"gradient blow-up", "grad_eta_max", m.grad_eta_max};
  return std::nullopt;
}

struct Corrected {
  WaveState state;
  int iterations = 0;
  double residual = 0.0;
};

// Newton on (F = 0, N = 0) with N the arclength constraint around `base`.
std::optional<Corrected> correct(const StripSolver& solver, const ContinuationConfig& cfg,
                                 const WaveState& predicted, const WaveState& base,
                                 double t_crest, double t_alpha, double ds) {
  WaveState x = predicted;
  const double cw = cfg.crest_weight * t_crest;
  const double ca = cfg.alpha_weight * t_alpha;
  auto constraint = [&](const WaveState& s) {
    return cw * (s.crest() - base.crest()) + ca * (s.alpha - base.alpha) - ds;
  };
  try {
    for (int it = 0; it <= cfg.max_corrector_iterations; ++it) {
      if (!(solver.admissibility(x).sigma_surface > 0.0)) return std::nullopt;
      const Residual r = solver.residual(x);
      const double n = constraint(x);
      const double norm = std::max(r.norm(), std::abs(n));
      if (!std::isfinite(norm)) return std::nullopt;
      if (norm <= cfg.tol) return Corrected{x, it, r.norm()};
      if (it == cfg.max_corrector_iterations) break;
      const NewtonDirection d = solver.newton_direction(x, r, ArclengthRow{cw, ca, -n});
      x = solver.add(x, d, 1.0);
    }
  } catch (const NumericError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

Monitors compute_monitors(const StripSolver& solver, const WaveState& state) {
  const DerivedFields f = solver.fields(state);
  const Grid& grid = solver.grid();
  const Index top = static_cast<Index>(grid.ny - 1);
  Monitors m;
  m.sigma_surface = std::numeric_limits<double>::infinity();
  m.grad_eta_min = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < static_cast<Index>(grid.nx); ++i) {
    const double g = f.eta_x(i, top) * f.eta_x(i, top) + f.eta_y(i, top) * f.eta_y(i, top);
    m.sigma_surface = std::min(m.sigma_surface, solver.mu() - 2.0 * state.alpha * state.w(i));
    m.grad_eta_min = std::min(m.grad_eta_min, g);
    m.grad_eta_max = std::max(m.grad_eta_max, g);
  }
  m.alpha = state.alpha;
  m.alpha_gap = solver.alpha_cr() - state.alpha;
  m.froude = state.alpha > 0.0 ? std::sqrt(solver.mu() / state.alpha)
                               : std::numeric_limits<double>::infinity();
  m.crest = state.crest();
  m.stagnation_margin = m.grad_eta_min > 1e-12 ? bernoulli_residual(solver, state).stagnation_margin
                                               : 0.0;
  return m;
}

NewtonReport anchor_crest(const StripSolver& solver, const WaveState& initial,
                          const NewtonOptions& options) {
  NewtonReport report;
  report.state = initial;
  const double target = initial.crest();
  const ArclengthRow pin{1.0, 0.0, 0.0};
  for (int it = 0;; ++it) {
    if (!(solver.admissibility(report.state).sigma_surface > 0.0))
      throw AdmissibilityError("crest-anchored correction left the admissible set");
    const Residual r = solver.residual(report.state);
    const double norm = r.norm();
    report.history.push_back(norm);
    if (!std::isfinite(norm)) throw NumericError("crest-anchored correction diverged");
    if (norm <= options.tol) {
      report.iterations = it;
      report.residual = norm;
      return report;
    }
    if (it == options.max_iter) {
      std::ostringstream msg;
      msg << "crest-anchored correction did not converge (residual " << norm << ")";
      throw NonConvergenceError(msg.str(), norm, it);
    }
    ArclengthRow row = pin;
    row.rhs = target - report.state.crest();
    report.state = solver.add(report.state, solver.newton_direction(report.state, r, row), 1.0);
  }
}

Branch extend_branch(const StripSolver& solver, const WaveState& seed,
                     const ContinuationConfig& cfg, const PointCallback& on_point) {
  if (!(cfg.step0 > 0.0 && cfg.step_min > 0.0 && cfg.step_max >= cfg.step_min &&
        cfg.crest_weight >= 0.0 && cfg.alpha_weight > 0.0 && cfg.growth >= 1.0))
    throw DomainError("invalid continuation configuration");
  WaveState start = seed;
  double r0 = solver.residual(seed).norm();
  int start_iterations = 0;
  if (r0 > cfg.tol) {
    const NewtonReport anchored =
        anchor_crest(solver, seed, NewtonOptions{cfg.tol, 4 * cfg.max_corrector_iterations, 0});
    start = anchored.state;
    r0 = anchored.residual;
    start_iterations = anchored.iterations;
  }

  Branch branch;
  auto store = [&](BranchPoint p) {
    if (cfg.nodal_type) p.nodal_ok = nodal_check(solver, p.state, *cfg.nodal_type).ok;
    branch.points.push_back(std::move(p));
    if (on_point) on_point(branch.points.back(), branch.points.size() - 1);
  };
  BranchPoint first;
  first.state = start;
  first.monitors = compute_monitors(solver, start);
  first.residual = r0;
  first.iterations = start_iterations;
  store(first);
  if (auto t = check_thresholds(branch.points.back().monitors, cfg.thresholds)) {
    branch.termination = *t;
    return branch;
  }

  // initial tangent toward decreasing alpha
  Direction tangent;
  {
    const NewtonDirection d = solver.parameter_sensitivity(start);
    tangent.phi = -d.phi;
    tangent.w = -d.w;
    tangent.alpha = -1.0;
  }
  double ds = std::clamp(cfg.step0, cfg.step_min, cfg.step_max);
  for (std::size_t step = 1; step <= cfg.max_steps; ++step) {
    const BranchPoint& last = branch.points.back();
    const double tn =
        weighted_norm(cfg, tangent.w(static_cast<Index>(solver.grid().crest_column())), tangent.alpha);
    const double t_crest = tangent.w(static_cast<Index>(solver.grid().crest_column())) / tn;
    const double t_alpha = tangent.alpha / tn;
    std::optional<Corrected> c;
    while (true) {
      WaveState pred = last.state;
      pred.phi += (ds / tn) * tangent.phi;
      pred.w += (ds / tn) * tangent.w;
      pred.alpha += (ds / tn) * tangent.alpha;
      c = correct(solver, cfg, pred, last.state, t_crest, t_alpha, ds);
      if (c) break;
      ds *= 0.5;
      if (ds < cfg.step_min) {
        std::ostringstream msg;
        msg << "continuation corrector stalled below the minimum step after " << step - 1
            << " steps";
        branch.termination = Termination{"corrector stall", "", ds};
        throw StallError(msg.str(), branch);
      }
    }
    BranchPoint p;
    p.state = std::move(c->state);
    p.s = last.s + ds;
    p.iterations = c->iterations;
    p.residual = c->residual;
    p.monitors = compute_monitors(solver, p.state);
    tangent.phi = p.state.phi - last.state.phi;
    tangent.w = p.state.w - last.state.w;
    tangent.alpha = p.state.alpha - last.state.alpha;
    store(std::move(p));
    if (auto t = check_thresholds(branch.points.back().monitors, cfg.thresholds)) {
      branch.termination = *t;
      return branch;
    }
    if (c->iterations <= cfg.fast_iterations) ds = std::min(ds * cfg.growth, cfg.step_max);
  }
  branch.termination = Termination{"max steps reached", "", static_cast<double>(cfg.max_steps)};
  return branch;
}

}  // namespace vorwave
