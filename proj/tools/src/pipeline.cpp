#include "vorwave_cli/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "artifacts.hpp"
#include "vorwave/cm_reduction.hpp"
#include "vorwave/diagnostics.hpp"
#include "vorwave/kernel_analysis.hpp"
#include "vorwave/laminar.hpp"
#include "vorwave/seed.hpp"
#include "vorwave/sturm.hpp"
#include "vorwave/wave_state_io.hpp"
#include "vorwave_cli/commands.hpp"

namespace vorwave::cli {

using nlohmann::json;

json run_pipeline(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const Vorticity& v = require_vorticity(c);
  const auto& dir = c.output_dir;
  std::filesystem::create_directories(dir / "points");
  json summary = {{"config", to_json(c)}};

  const LaminarFlow flow = solve_laminar(v, c.laminar_ny, c.tolerances.bvp_tol);
  write_csv(dir / "laminar.csv", {"y", "psi", "psi_y"}, {flow.y, flow.psi, flow.psi_y});
  summary["laminar"] = {{"slope0", flow.slope0}, {"mu", flow.mu}, {"min_psi_y", flow.min_psi_y}};
  summary["critical"] = {{"alpha_cr", flow.alpha_cr}, {"alpha_tilde_cr", flow.alpha_tilde_cr}};

  const EigenSolution eig = principal_eigen(flow, flow.alpha_tilde_cr, c.eigen_ny);
  write_csv(dir / "eigen.csv", {"y", "phi0"}, {eig.y, eig.phi0});
  summary["eigen"] = {{"nu0", eig.nu0}};

  const CMCoefficients cm = compute_coefficients(flow, eig);
  write_csv(dir / "cm_profiles.csv", {"y", "theta", "g", "k"}, {cm.y, cm.theta, cm.g_profile, cm.k_profile});
  summary["cm"] = {{"c0", cm.c0}, {"m0", cm.m0}, {"f101", cm.f101}, {"f200", cm.f200},
                   {"wave_type", to_string(cm.wave_type)}};

  const StripSolver solver(c.grid, flow);
  const WaveState seed = small_amplitude_seed(solver, eig, cm, c.epsilon);
  write_wave_state(dir / "seed.state", seed, v, c.payload);
  summary["seed"] = {{"epsilon", c.epsilon}, {"alpha", seed.alpha}, {"crest", seed.crest()},
                     {"residual", solver.residual(seed).norm()}};

  // fixed-alpha solve; the branch below starts from the seed itself
  const NewtonReport solved = solver.newton_solve(
      seed, NewtonOptions{c.tolerances.newton_tol, c.tolerances.max_iter, 20});
  write_wave_state(dir / "solved.state", solved.state, v, c.payload);
  summary["solve"] = {{"iterations", solved.iterations},
                      {"residual", solved.residual},
                      {"crest", solved.state.crest()},
                      {"collapsed_to_trivial", std::abs(solved.state.crest()) < 1e-3 * std::abs(seed.crest())}};

  ContinuationConfig cc = c.continuation;
  cc.tol = c.tolerances.newton_tol;
  cc.nodal_type = cm.wave_type;
  auto on_point = [&](const BranchPoint& p, std::size_t k) {
    if (k % c.stride != 0) return;
    char name[32];
    std::snprintf(name, sizeof name, "point_%04zu.state", k);
    write_wave_state(dir / "points" / name, p.state, v, c.payload);
  };
  Branch branch;
  try {
    branch = extend_branch(solver, seed, cc, on_point);
  } catch (const StallError& e) {
    write_branch_table(dir / "branch.csv", e.partial());
    throw;
  }
  write_branch_table(dir / "branch.csv", branch);
  summary["continuation"] = {{"points", branch.points.size()},
                             {"termination", branch.termination.reason},
                             {"first", monitors_to_json(branch.points.front().monitors)},
                             {"last", monitors_to_json(branch.points.back().monitors)}};

  const WaveState& last = branch.points.back().state;
  write_wave_state(dir / "last.state", last, v, c.payload);
  const DiagnosticsReport report = diagnose(solver, last, cm.wave_type, c.flow_force_stride);
  write_json(dir / "diagnostics.json", report_to_json(report));
  write_csv(dir / "surface.csv", {"xi", "eta"}, {report.surface.xi, report.surface.eta});
  summary["diagnostics"] = {{"flow_force_drift", report.flow_force.drift},
                            {"bernoulli_residual", report.bernoulli.residual},
                            {"nodal_ok", report.nodal.ok},
                            {"overhang", report.surface.overhang},
                            {"far_field_leakage", report.far_field_leakage}};
  if (c.jacobian_directions > 0) {
    const JacobianCheck jc = check_jacobian(solver, last, c.jacobian_directions, c.rng_seed);
    summary["jacobian_check"] = {{"directions", c.jacobian_directions},
                                 {"seed", c.rng_seed},
                                 {"max_relative_error", jc.max_relative_error}};
  }
  summary["seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  add_vorticity_warnings(summary, v);
  write_json(dir / "summary.json", summary);
  return summary;
}

}  // namespace vorwave::cli
