#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vorwave/parallel.hpp"
#include "vorwave_cli/commands.hpp"
#include "vorwave_cli/pipeline.hpp"

namespace {

using namespace vorwave;
using namespace vorwave::cli;

struct GlobalOptions {
  std::string config;
  std::string vorticity;
  std::optional<double> L, epsilon, newton_tol;
  std::optional<std::size_t> nx, ny;
  std::optional<int> max_iter;
  std::string closure;
  std::vector<std::string> sets;
  std::string payload;
};

RunConfig build_config(const GlobalOptions& g) {
  RunConfig c = g.config.empty() ? default_config() : load_config(g.config);
  if (!g.vorticity.empty()) {
    try {
      c.vorticity = parse_vorticity_shorthand(g.vorticity);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--vorticity: ") + e.what());
    }
  }
  std::vector<std::string> sets;
  if (g.L) sets.push_back("grid.L=" + std::to_string(*g.L));
  if (g.nx) sets.push_back("grid.nx=" + std::to_string(*g.nx));
  if (g.ny) sets.push_back("grid.ny=" + std::to_string(*g.ny));
  if (!g.closure.empty()) sets.push_back("grid.closure=" + g.closure);
  if (g.epsilon) sets.push_back("epsilon=" + std::to_string(*g.epsilon));
  if (g.newton_tol) sets.push_back("tolerances.newton_tol=" + std::to_string(*g.newton_tol));
  if (g.max_iter) sets.push_back("tolerances.max_iter=" + std::to_string(*g.max_iter));
  if (!g.payload.empty()) sets.push_back("payload=" + g.payload);
  sets.insert(sets.end(), g.sets.begin(), g.sets.end());
  for (const auto& s : sets) apply_override(c, s);
  return c;
}

std::optional<WaveType> parse_type(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "elevation") return WaveType::elevation;
  if (s == "depression") return WaveType::depression;
  throw UsageError("--type must be elevation or depression");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solitary water waves with vorticity on a conformal strip"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("--vorticity", g.vorticity, "constant:V | affine:S | polynomial:c0,c1,.. | zero");
  app.add_option("--L", g.L, "strip half-length");
  app.add_option("--nx", g.nx, "nodes along x");
  app.add_option("--ny", g.ny, "nodes along y");
  app.add_option("--closure", g.closure, "even_half_strip | free_full_strip");
  app.add_option("--epsilon", g.epsilon, "distance below alpha_cr for the seed");
  app.add_option("--newton-tol", g.newton_tol, "Newton residual tolerance");
  app.add_option("--max-iter", g.max_iter, "Newton iteration cap");
  app.add_option("--payload", g.payload, "binary | csv state files");
  app.add_option("--set", g.sets, "config override key.path=value")->take_all();

  std::optional<std::string> csv;
  std::optional<double> alpha, alpha_tilde;
  std::string state, out, seed, out_dir, type;
  ScanOptions scan;

  auto* laminar = app.add_subcommand("laminar", "laminar background flow");
  laminar->add_option("--csv", csv, "profile output");
  auto* critical = app.add_subcommand("critical", "critical gravity parameter");
  critical->add_option("--alpha", alpha, "also report Froude numbers at alpha");
  auto* eigen = app.add_subcommand("eigen", "principal Sturm-Liouville eigenpair");
  eigen->add_option("--alpha-tilde", alpha_tilde, "Robin coefficient (default critical)");
  eigen->add_option("--csv", csv, "eigenfunction output");
  auto* cm = app.add_subcommand("cm-coeffs", "center-manifold coefficients");
  cm->add_option("--csv", csv, "theta, g, k profiles");
  auto* seed_cmd = app.add_subcommand("seed", "small-amplitude seed state");
  seed_cmd->add_option("--out", out, "state file")->required();
  auto* solve = app.add_subcommand("solve", "Newton at fixed alpha");
  solve->add_option("--state", state, "initial state file")->required();
  solve->add_option("--out", out, "converged state file")->required();
  auto* cont = app.add_subcommand("continue", "pseudo-arclength continuation");
  cont->add_option("--seed", seed, "starting state file")->required();
  cont->add_option("--out", out_dir, "output directory")->required();
  auto* diag = app.add_subcommand("diagnose", "physical diagnostics of a state");
  diag->add_option("--state", state, "state file")->required();
  diag->add_option("--type", type, "elevation | depression (default from crest sign)");
  diag->add_option("--csv", csv, "surface polyline output");
  auto* run = app.add_subcommand("run", "full pipeline into output_dir");
  auto* scan_cmd = app.add_subcommand("scan", "search polynomial vorticities for M0 > 0");
  scan_cmd->add_option("--degree", scan.degree, "polynomial degree");
  scan_cmd->add_option("--range", scan.range, "coefficient range [-r, r]");
  scan_cmd->add_option("--steps", scan.steps, "grid points per coefficient");
  scan_cmd->add_option("--scan-ny", scan.ny, "laminar and eigen grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}, {"exit_code", 2}}.dump()
              << '\n';
    return 2;
  }

  try {
    configure_threads();
    const RunConfig c = build_config(g);
    const auto path = [](const std::optional<std::string>& p) -> std::optional<Path> {
      return p ? std::optional<Path>(*p) : std::nullopt;
    };
    nlohmann::json result;
    if (*laminar) result = cmd_laminar(c, path(csv));
    else if (*critical) result = cmd_critical(c, alpha);
    else if (*eigen) result = cmd_eigen(c, alpha_tilde, path(csv));
    else if (*cm) result = cmd_cm_coeffs(c, path(csv));
    else if (*seed_cmd) result = cmd_seed(c, out);
    else if (*solve) result = cmd_solve(c, state, out);
    else if (*cont) result = cmd_continue(c, seed, out_dir);
    else if (*diag) result = cmd_diagnose(c, state, parse_type(type), path(csv));
    else if (*run) result = run_pipeline(c);
    else if (*scan_cmd) result = cmd_scan(c, scan);
    const bool tagged = *solve || *cont || *diag || *run;
    if (!tagged && c.vorticity && result.is_object()) add_vorticity_warnings(result, *c.vorticity);
    std::cout << result.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << error_json(e).dump() << '\n';
    return exit_code_for(e);
  }
}
