#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "vorwave/errors.hpp"
#include "vorwave_cli/commands.hpp"
#include "vorwave_cli/config.hpp"

namespace vorwave::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

RunConfig with(const char* vorticity) {
  RunConfig c = default_config();
  c.vorticity = parse_vorticity_shorthand(vorticity);
  return c;
}

TEST(CliConfig, JsonRoundTrip) {
  RunConfig c = with("affine:1");
  c.grid.nx = 77;
  c.continuation.thresholds.sigma_surface = 0.5;
  const RunConfig back = config_from_json(to_json(c));
  EXPECT_EQ(back.grid, c.grid);
  EXPECT_EQ(back.continuation.thresholds.sigma_surface, 0.5);
  EXPECT_EQ(back.vorticity->kind_name(), "affine");
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(CliConfig, StrictSchema) {
  EXPECT_THROW((void)config_from_json(json{{"bogus", 1}}), UsageError);
  EXPECT_THROW((void)config_from_json(json{{"grid", {{"nx", "many"}}}}), UsageError);
  EXPECT_THROW((void)config_from_json(json{{"grid", {{"closure", "periodic"}}}}), UsageError);
  EXPECT_THROW((void)config_from_json(json{{"payload", "xml"}}), UsageError);
  EXPECT_THROW((void)config_from_json(json{{"vorticity", "spiral:2"}}), UsageError);
  EXPECT_THROW((void)config_from_json(json{{"continuation", {{"growth", 0.5}}}}), UsageError);
  EXPECT_THROW((void)load_config("/nonexistent/config.json"), UsageError);
}

TEST(CliConfig, Overrides) {
  RunConfig c = default_config();
  apply_override(c, "grid.nx=51");
  apply_override(c, "vorticity=constant:-1");
  apply_override(c, "continuation.thresholds.alpha=0.01");
  EXPECT_EQ(c.grid.nx, 51u);
  EXPECT_DOUBLE_EQ(c.vorticity->eval(0.3), -1.0);
  EXPECT_DOUBLE_EQ(c.continuation.thresholds.alpha, 0.01);
  EXPECT_THROW(apply_override(c, "novalue"), UsageError);
  EXPECT_THROW(apply_override(c, "grid.bogus=1"), UsageError);
}

TEST(CliConfig, MissingVorticity) {
  EXPECT_THROW((void)require_vorticity(default_config()), UsageError);
  try {
    (void)cmd_critical(default_config(), std::nullopt);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_EQ(exit_code_for(e), 2);
    EXPECT_EQ(error_json(e)["error"], "usage");
    EXPECT_EQ(error_json(e)["exit_code"], 2);
  }
}

TEST(CliCommands, CriticalValues) {
  const json j = cmd_critical(with("constant:-1"), 0.75);
  EXPECT_NEAR(j["alpha_cr"].get<double>(), 0.75, 1e-8);
  EXPECT_NEAR(j["froude"].get<double>(), std::sqrt(3.0), 1e-8);
}

TEST(CliCommands, TabulatedWarning) {
  json j = json::object();
  add_vorticity_warnings(j, parse_vorticity_shorthand("affine:1"));
  EXPECT_FALSE(j.contains("warnings"));
  std::vector<double> s, g;
  for (int k = 0; k <= 20; ++k) {
    s.push_back(-0.5 + 0.1 * k);
    g.push_back(0.0);
  }
  add_vorticity_warnings(j, Vorticity::tabulated(TabulatedVorticity(s, g)));
  ASSERT_TRUE(j.contains("warnings"));
  EXPECT_EQ(j["warnings"].size(), 1u);
}

TEST(CliCommands, ModelErrorExitCode) {
  try {
    (void)cmd_critical(with("affine:5"), std::nullopt);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_EQ(exit_code_for(e), 3);
  }
  EXPECT_EQ(exit_code_for(NonConvergenceError("x", 1.0, 3)), 4);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
}

TEST(CliCommands, CoefficientsAndSeed) {
  RunConfig c = with("zero");
  c.grid = Grid{20.0, 41, 11, LateralClosure::even_half_strip};
  const json cm = cmd_cm_coeffs(c, std::nullopt);
  EXPECT_NEAR(cm["m0"].get<double>(), -3.0, 1e-6);
  const auto path = fs::temp_directory_path() / "vorwave_cli_seed.state";
  const json s = cmd_seed(c, path);
  EXPECT_TRUE(fs::exists(path));
  EXPECT_NEAR(s["alpha"].get<double>(), 0.98, 1e-10);
  fs::remove(path);
}

}  // namespace
}  // namespace vorwave::cli
