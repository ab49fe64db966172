#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vorwave/cm_reduction.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/strip_solver.hpp"

namespace vorwave {

struct Monitors {
  double sigma_surface = 0.0;  ///< inf over the top of mu - 2 alpha w
  double grad_eta_min = 0.0;   ///< inf over the top of |grad eta|^2
  double grad_eta_max = 0.0;   ///< sup over the top of |grad eta|^2
  double alpha = 0.0;
  double alpha_gap = 0.0;      ///< alpha_cr - alpha
  double froude = 0.0;
  double crest = 0.0;
  double stagnation_margin = 0.0;
};

Monitors compute_monitors(const StripSolver& solver, const WaveState& state);

struct BranchPoint {
  WaveState state;
  double s = 0.0;
  Monitors monitors;
  int iterations = 0;
  double residual = 0.0;
  std::optional<bool> nodal_ok;  ///< set when nodal checking is enabled
};

struct MonitorThresholds {
  double sigma_surface = 1e-3;  ///< stop below
  double grad_eta_min = 1e-3;   ///< stop below
  double alpha = 1e-3;          ///< stop below
  double alpha_gap = 1e-6;      ///< stop below
  double grad_eta_max = 1e3;    ///< stop above
};

struct ContinuationConfig {
  double step0 = 0.01;
  double step_min = 1e-6;
  double step_max = 0.05;
  double crest_weight = 1.0;
  double alpha_weight = 1.0;
  double growth = 1.3;
  int fast_iterations = 3;  ///< grow the step at or below this many corrector iterations
  std::size_t max_steps = 200;
  MonitorThresholds thresholds;
  double tol = 1e-10;
  int max_corrector_iterations = 8;
  std::optional<WaveType> nodal_type;  ///< run the nodal check on every accepted point
};

struct Termination {
  std::string reason;
  std::string monitor;  ///< empty for max steps
  double value = 0.0;
};

struct Branch {
  std::vector<BranchPoint> points;
  Termination termination;
};

/// Corrector failed below the minimum step; carries the branch up to the last good point.
class StallError : public NumericError {
 public:
  StallError(const std::string& what, Branch partial)
      : NumericError(what), partial_(std::move(partial)) {}
  const Branch& partial() const noexcept { return partial_; }

 private:
  Branch partial_;
};

using PointCallback = std::function<void(const BranchPoint&, std::size_t index)>;

/// Newton on (phi, w, alpha) with the crest held at its initial value.
NewtonReport anchor_crest(const StripSolver& solver, const WaveState& initial,
                          const NewtonOptions& options = {});

/// Pseudo-arclength continuation in the weighted (crest, alpha) plane, starting toward
/// decreasing alpha. An unconverged seed is first corrected with anchor_crest.
Branch extend_branch(const StripSolver& solver, const WaveState& seed,
                     const ContinuationConfig& config, const PointCallback& on_point = {});

}  // namespace vorwave
