#include "vorwave_cli/config.hpp"

#include <fstream>
#include <set>

namespace vorwave::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw UsageError("unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(where + "." + key + " has the wrong type");
  }
}

void positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw UsageError(name + " must be positive");
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.continuation.step0 = 0.005;
  c.continuation.step_max = 0.015;
  c.continuation.max_steps = 60;
  return c;
}

json to_json(const RunConfig& c) {
  const auto& k = c.continuation;
  json j = {
      {"grid", {{"L", c.grid.L}, {"nx", c.grid.nx}, {"ny", c.grid.ny}, {"closure", to_string(c.grid.closure)}}},
      {"tolerances",
       {{"bvp_tol", c.tolerances.bvp_tol},
        {"newton_tol", c.tolerances.newton_tol},
        {"max_iter", c.tolerances.max_iter}}},
      {"epsilon", c.epsilon},
      {"laminar_ny", c.laminar_ny},
      {"eigen_ny", c.eigen_ny},
      {"continuation",
       {{"step0", k.step0},
        {"step_min", k.step_min},
        {"step_max", k.step_max},
        {"crest_weight", k.crest_weight},
        {"alpha_weight", k.alpha_weight},
        {"growth", k.growth},
        {"max_steps", k.max_steps},
        {"max_corrector_iterations", k.max_corrector_iterations},
        {"stride", c.stride},
        {"thresholds",
         {{"sigma_surface", k.thresholds.sigma_surface},
          {"grad_eta_min", k.thresholds.grad_eta_min},
          {"alpha", k.thresholds.alpha},
          {"alpha_gap", k.thresholds.alpha_gap},
          {"grad_eta_max", k.thresholds.grad_eta_max}}}}},
      {"diagnostics", {{"flow_force_stride", c.flow_force_stride}, {"jacobian_directions", c.jacobian_directions}}},
      {"rng_seed", c.rng_seed},
      {"payload", c.payload == Payload::binary ? "binary" : "csv"},
      {"output_dir", c.output_dir.string()},
  };
  if (c.vorticity) j["vorticity"] = vorwave::to_json(*c.vorticity);
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c = default_config();
  reject_unknown(j, {"vorticity", "grid", "tolerances", "epsilon", "laminar_ny", "eigen_ny",
                     "continuation", "diagnostics", "rng_seed", "payload", "output_dir"},
                 "config");
  try {
    if (j.contains("vorticity")) {
      const json& v = j.at("vorticity");
      c.vorticity = v.is_string() ? parse_vorticity_shorthand(v.get<std::string>())
                                  : vorticity_from_json(v);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("vorticity: ") + e.what());
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"L", "nx", "ny", "closure"}, "grid");
    read(g, "L", c.grid.L, "grid");
    read(g, "nx", c.grid.nx, "grid");
    read(g, "ny", c.grid.ny, "grid");
    if (g.contains("closure")) {
      std::string s;
      read(g, "closure", s, "grid");
      try {
        c.grid.closure = closure_from_string(s);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    reject_unknown(t, {"bvp_tol", "newton_tol", "max_iter"}, "tolerances");
    read(t, "bvp_tol", c.tolerances.bvp_tol, "tolerances");
    read(t, "newton_tol", c.tolerances.newton_tol, "tolerances");
    read(t, "max_iter", c.tolerances.max_iter, "tolerances");
  }
  read(j, "epsilon", c.epsilon, "config");
  read(j, "laminar_ny", c.laminar_ny, "config");
  read(j, "eigen_ny", c.eigen_ny, "config");
  if (j.contains("continuation")) {
    const json& k = j.at("continuation");
    auto& cc = c.continuation;
    reject_unknown(k, {"step0", "step_min", "step_max", "crest_weight", "alpha_weight", "growth",
                       "max_steps", "max_corrector_iterations", "stride", "thresholds"},
                   "continuation");
    read(k, "step0", cc.step0, "continuation");
    read(k, "step_min", cc.step_min, "continuation");
    read(k, "step_max", cc.step_max, "continuation");
    read(k, "crest_weight", cc.crest_weight, "continuation");
    read(k, "alpha_weight", cc.alpha_weight, "continuation");
    read(k, "growth", cc.growth, "continuation");
    read(k, "max_steps", cc.max_steps, "continuation");
    read(k, "max_corrector_iterations", cc.max_corrector_iterations, "continuation");
    read(k, "stride", c.stride, "continuation");
    if (k.contains("thresholds")) {
      const json& t = k.at("thresholds");
      reject_unknown(t, {"sigma_surface", "grad_eta_min", "alpha", "alpha_gap", "grad_eta_max"},
                     "continuation.thresholds");
      read(t, "sigma_surface", cc.thresholds.sigma_surface, "thresholds");
      read(t, "grad_eta_min", cc.thresholds.grad_eta_min, "thresholds");
      read(t, "alpha", cc.thresholds.alpha, "thresholds");
      read(t, "alpha_gap", cc.thresholds.alpha_gap, "thresholds");
      read(t, "grad_eta_max", cc.thresholds.grad_eta_max, "thresholds");
    }
  }
  if (j.contains("diagnostics")) {
    const json& d = j.at("diagnostics");
    reject_unknown(d, {"flow_force_stride", "jacobian_directions"}, "diagnostics");
    read(d, "flow_force_stride", c.flow_force_stride, "diagnostics");
    read(d, "jacobian_directions", c.jacobian_directions, "diagnostics");
  }
  read(j, "rng_seed", c.rng_seed, "config");
  if (j.contains("payload")) {
    std::string p;
    read(j, "payload", p, "config");
    if (p == "binary") c.payload = Payload::binary;
    else if (p == "csv") c.payload = Payload::csv;
    else throw UsageError("payload must be 'binary' or 'csv'");
  }
  if (j.contains("output_dir")) {
    std::string p;
    read(j, "output_dir", p, "config");
    c.output_dir = p;
  }

  try {
    c.grid.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  positive(c.tolerances.bvp_tol, "tolerances.bvp_tol");
  positive(c.tolerances.newton_tol, "tolerances.newton_tol");
  if (c.tolerances.max_iter < 1) throw UsageError("tolerances.max_iter must be at least 1");
  positive(c.epsilon, "epsilon");
  if (c.laminar_ny < 65 || c.eigen_ny < 65) throw UsageError("laminar_ny and eigen_ny must be at least 65");
  const auto& cc = c.continuation;
  positive(cc.step0, "continuation.step0");
  positive(cc.step_min, "continuation.step_min");
  positive(cc.step_max, "continuation.step_max");
  if (cc.step_max < cc.step_min) throw UsageError("continuation.step_max is below step_min");
  positive(cc.alpha_weight, "continuation.alpha_weight");
  if (cc.crest_weight < 0.0) throw UsageError("continuation.crest_weight must be non-negative");
  if (cc.growth < 1.0) throw UsageError("continuation.growth must be at least 1");
  if (cc.max_corrector_iterations < 1) throw UsageError("continuation.max_corrector_iterations must be at least 1");
  positive(cc.thresholds.sigma_surface, "thresholds.sigma_surface");
  positive(cc.thresholds.grad_eta_min, "thresholds.grad_eta_min");
  positive(cc.thresholds.alpha, "thresholds.alpha");
  positive(cc.thresholds.alpha_gap, "thresholds.alpha_gap");
  positive(cc.thresholds.grad_eta_max, "thresholds.grad_eta_max");
  if (c.stride < 1 || c.flow_force_stride < 1) throw UsageError("strides must be at least 1");
  if (c.jacobian_directions < 0) throw UsageError("diagnostics.jacobian_directions must be non-negative");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

void apply_override(RunConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("override must look like key=value: " + assignment);
  std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  std::string pointer = "/" + key;
  for (auto& ch : pointer)
    if (ch == '.') ch = '/';
  json j = to_json(c);
  j[json::json_pointer(pointer)] = value;
  c = config_from_json(j);
}

const Vorticity& require_vorticity(const RunConfig& c) {
  if (!c.vorticity) throw UsageError("missing vorticity field (use --vorticity or the config)");
  return *c.vorticity;
}

}  // namespace vorwave::cli
