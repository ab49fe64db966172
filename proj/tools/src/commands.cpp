#include "vorwave_cli/commands.hpp"

#include <cmath>
#include <limits>

#include "artifacts.hpp"
#include "vorwave/diagnostics.hpp"
#include "vorwave/laminar.hpp"
#include "vorwave/seed.hpp"
#include "vorwave/sturm.hpp"
#include "vorwave/wave_state_io.hpp"

namespace vorwave::cli {

using nlohmann::json;

namespace {

LaminarFlow laminar_for(const RunConfig& c, const Vorticity& v) {
  return solve_laminar(v, c.laminar_ny, c.tolerances.bvp_tol);
}

}  // namespace

json cmd_laminar(const RunConfig& c, const std::optional<Path>& csv) {
  const LaminarFlow f = laminar_for(c, require_vorticity(c));
  if (csv) write_csv(*csv, {"y", "psi", "psi_y"}, {f.y, f.psi, f.psi_y});
  return {{"slope0", f.slope0},        {"psi_y_top", f.psi_y_top()}, {"mu", f.mu},
          {"alpha_cr", f.alpha_cr},    {"alpha_tilde_cr", f.alpha_tilde_cr},
          {"min_psi_y", f.min_psi_y}};
}

json cmd_critical(const RunConfig& c, std::optional<double> alpha) {
  const LaminarFlow f = laminar_for(c, require_vorticity(c));
  const CriticalValues cv = critical_alpha(f);
  json j = {{"alpha_cr", cv.alpha_cr}, {"alpha_tilde_cr", cv.alpha_tilde_cr}, {"mu", f.mu}};
  if (alpha) {
    const FroudeNumbers fr = froude(f, *alpha);
    j["alpha"] = *alpha;
    j["froude"] = fr.froude;
    j["froude_cr"] = fr.froude_cr;
  }
  return j;
}

json cmd_eigen(const RunConfig& c, std::optional<double> alpha_tilde, const std::optional<Path>& csv) {
  const LaminarFlow f = laminar_for(c, require_vorticity(c));
  const double at = alpha_tilde.value_or(f.alpha_tilde_cr);
  const EigenSolution e = principal_eigen(f, at, c.eigen_ny);
  if (csv) write_csv(*csv, {"y", "phi0"}, {e.y, e.phi0});
  return {{"nu0", e.nu0}, {"alpha_tilde", e.alpha_tilde}, {"norm_l2_sq", e.norm_l2_sq}};
}

json cmd_cm_coeffs(const RunConfig& c, const std::optional<Path>& csv) {
  const LaminarFlow f = laminar_for(c, require_vorticity(c));
  const EigenSolution e = principal_eigen(f, f.alpha_tilde_cr, c.eigen_ny);
  const CMCoefficients cm = compute_coefficients(f, e);
  if (csv) write_csv(*csv, {"y", "theta", "g", "k"}, {cm.y, cm.theta, cm.g_profile, cm.k_profile});
  return {{"c0", cm.c0},     {"m0", cm.m0},     {"b1", cm.b1},
          {"b2", cm.b2},     {"f101", cm.f101}, {"f200", cm.f200},
          {"wave_type", to_string(cm.wave_type)}};
}

json cmd_seed(const RunConfig& c, const Path& out) {
  const Vorticity& v = require_vorticity(c);
  const LaminarFlow f = laminar_for(c, v);
  const EigenSolution e = principal_eigen(f, f.alpha_tilde_cr, c.eigen_ny);
  const CMCoefficients cm = compute_coefficients(f, e);
  const StripSolver solver(c.grid, f);
  const WaveState s = small_amplitude_seed(solver, e, cm, c.epsilon);
  write_wave_state(out, s, v, c.payload);
  return {{"epsilon", c.epsilon},
          {"alpha", s.alpha},
          {"crest", s.crest()},
          {"residual", solver.residual(s).norm()},
          {"file", out.string()}};
}

json cmd_solve(const RunConfig& c, const Path& state, const Path& out) {
  const WaveStateFile in = read_wave_state(state);
  const LaminarFlow f = laminar_for(c, in.vorticity);
  const StripSolver solver(in.state.grid, f);
  const NewtonReport r = solver.newton_solve(
      in.state, NewtonOptions{c.tolerances.newton_tol, c.tolerances.max_iter, 20});
  write_wave_state(out, r.state, in.vorticity, c.payload);
  const double start = in.state.crest();
  json j = {{"iterations", r.iterations},
          {"residual", r.residual},
          {"history", r.history},
          {"alpha", r.state.alpha},
          {"crest", r.state.crest()},
          {"initial_crest", start},
          {"collapsed_to_trivial",
           std::abs(start) > 0.0 && std::abs(r.state.crest()) < 1e-3 * std::abs(start)},
          {"file", out.string()}};
  add_vorticity_warnings(j, in.vorticity);
  return j;
}

json cmd_continue(const RunConfig& c, const Path& seed, const Path& out_dir) {
  const WaveStateFile in = read_wave_state(seed);
  const LaminarFlow f = laminar_for(c, in.vorticity);
  const StripSolver solver(in.state.grid, f);
  std::filesystem::create_directories(out_dir);
  ContinuationConfig cc = c.continuation;
  cc.tol = c.tolerances.newton_tol;
  cc.nodal_type = in.state.crest() >= 0.0 ? WaveType::elevation : WaveType::depression;
  auto on_point = [&](const BranchPoint& p, std::size_t k) {
    if (k % c.stride != 0) return;
    char name[32];
    std::snprintf(name, sizeof name, "point_%04zu.state", k);
    write_wave_state(out_dir / name, p.state, in.vorticity, c.payload);
  };
  Branch branch;
  try {
    branch = extend_branch(solver, in.state, cc, on_point);
  } catch (const StallError& e) {
    write_branch_table(out_dir / "branch.csv", e.partial());
    throw;
  }
  write_branch_table(out_dir / "branch.csv", branch);
  const BranchPoint& last = branch.points.back();
  write_wave_state(out_dir / "last.state", last.state, in.vorticity, c.payload);
  json j = {{"points", branch.points.size()},
          {"termination", {{"reason", branch.termination.reason},
                           {"monitor", branch.termination.monitor},
                           {"value", branch.termination.value}}},
          {"first", monitors_to_json(branch.points.front().monitors)},
          {"last", monitors_to_json(last.monitors)},
          {"branch_table", (out_dir / "branch.csv").string()}};
  add_vorticity_warnings(j, in.vorticity);
  return j;
}

json cmd_diagnose(const RunConfig& c, const Path& state, std::optional<WaveType> type,
                  const std::optional<Path>& csv) {
  const WaveStateFile in = read_wave_state(state);
  const LaminarFlow f = laminar_for(c, in.vorticity);
  const StripSolver solver(in.state.grid, f);
  const WaveType t =
      type.value_or(in.state.crest() >= 0.0 ? WaveType::elevation : WaveType::depression);
  const DiagnosticsReport r = diagnose(solver, in.state, t, c.flow_force_stride);
  if (csv) write_csv(*csv, {"xi", "eta"}, {r.surface.xi, r.surface.eta});
  json j = report_to_json(r);
  j["wave_type"] = to_string(t);
  j["residual"] = solver.residual(in.state).norm();
  add_vorticity_warnings(j, in.vorticity);
  return j;
}

json cmd_scan(const RunConfig& c, const ScanOptions& o) {
  if (o.degree < 0 || o.degree > 4 || o.steps < 2 || !(o.range > 0.0))
    throw UsageError("scan needs degree in [0, 4], steps >= 2 and range > 0");
  const int terms = o.degree + 1;
  std::size_t total = 1;
  for (int k = 0; k < terms; ++k) total *= static_cast<std::size_t>(o.steps);
  std::size_t admissible = 0;
  double m0_min = std::numeric_limits<double>::infinity();
  double m0_max = -std::numeric_limits<double>::infinity();
  json positive = json::array();
  std::vector<double> coeff(static_cast<std::size_t>(terms));
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    for (int k = 0; k < terms; ++k) {
      const auto step = rest % static_cast<std::size_t>(o.steps);
      rest /= static_cast<std::size_t>(o.steps);
      coeff[static_cast<std::size_t>(k)] =
          -o.range + 2.0 * o.range * static_cast<double>(step) / (o.steps - 1);
    }
    try {
      const LaminarFlow f = solve_laminar(Vorticity::polynomial(coeff), o.ny, c.tolerances.bvp_tol);
      const EigenSolution e = principal_eigen(f, f.alpha_tilde_cr, o.ny);
      const CMCoefficients cm = compute_coefficients(f, e);
      ++admissible;
      m0_min = std::min(m0_min, cm.m0);
      m0_max = std::max(m0_max, cm.m0);
      if (cm.m0 > 0.0) positive.push_back({{"coefficients", coeff}, {"m0", cm.m0}, {"alpha_cr", f.alpha_cr}});
    } catch (const Error&) {
      continue;
    }
  }
  json j = {{"tried", total}, {"admissible", admissible}, {"positive_m0", positive}};
  if (admissible) {
    j["m0_min"] = m0_min;
    j["m0_max"] = m0_max;
  }
  return j;
}

void add_vorticity_warnings(json& j, const Vorticity& v) {
  if (!v.is_tabulated()) return;
  j["warnings"].push_back(
      "tabulated vorticity: the spline is only piecewise C2; analyticity along the branch is not "
      "checked");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return 2;
  if (dynamic_cast<const ModelError*>(&e)) return 3;
  if (dynamic_cast<const NumericError*>(&e)) return 4;
  return 1;
}

json error_json(const std::exception& e) {
  std::string kind = "error";
  if (dynamic_cast<const UsageError*>(&e)) kind = "usage";
  else if (dynamic_cast<const DomainError*>(&e)) kind = "domain";
  else if (dynamic_cast<const DegeneracyError*>(&e)) kind = "degeneracy";
  else if (dynamic_cast<const ModelError*>(&e)) kind = "model";
  else if (dynamic_cast<const NonConvergenceError*>(&e)) kind = "nonconvergence";
  else if (dynamic_cast<const StallError*>(&e)) kind = "stall";
  else if (dynamic_cast<const NumericError*>(&e)) kind = "numeric";
  json j = {{"error", kind}, {"message", e.what()}, {"exit_code", exit_code_for(e)}};
  if (const auto* nc = dynamic_cast<const NonConvergenceError*>(&e)) {
    j["last_residual"] = nc->last_residual();
    j["iterations"] = nc->iterations();
  }
  return j;
}

}  // namespace vorwave::cli
