#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vorwave/cm_reduction.hpp"
#include "vorwave/strip_solver.hpp"

namespace vorwave {

struct VelocityField {
  Field u, v;
};

/// Conformal velocity from centered differences; ConformalityError if |grad eta|^2 < 1e-12.
VelocityField velocity_field(const StripSolver& solver, const WaveState& state);

/// Flow force at one column by Simpson in y.
double flow_force(const StripSolver& solver, const WaveState& state, std::size_t x_index);

struct FlowForceProfile {
  std::vector<std::size_t> columns;
  std::vector<double> x;
  std::vector<double> s;
  double drift = 0.0;  ///< max |S(x) - S(crest)| / |S(crest)|
};

inline constexpr std::size_t kDefaultFlowForceStride = 5;

FlowForceProfile flow_force_profile(const StripSolver& solver, const WaveState& state,
                                    std::size_t stride = kDefaultFlowForceStride);

inline constexpr double kNodalNoiseFloor = 1e-12;

struct NodalReport {
  bool ok = true;
  bool trivial = false;  ///< every checked eta_x was below the noise floor
  std::size_t checked = 0;
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;  ///< (i, j)
  double violation_value = 0.0;
  bool v_ok = true;  ///< vertical velocity has the matching sign on x > 0
  std::optional<std::pair<std::size_t, std::size_t>> first_v_violation;
};

/// Sign of eta_x on x > 0 at interior and surface nodes: negative for elevation, positive for depression.
NodalReport nodal_check(const StripSolver& solver, const WaveState& state, WaveType type);

inline constexpr double kOverhangThreshold = 1e-10;

struct SurfaceCurve {
  std::vector<double> xi;
  std::vector<double> eta;
  bool overhang = false;
  double min_xi_x = 0.0;
  bool arclength_ok = true;
};

/// Physical surface from x >= 0; xi integrates eta_y along the top by the trapezoid rule.
SurfaceCurve surface_reconstruction(const StripSolver& solver, const WaveState& state);

/// Same from raw samples: x from the crest outward, eta_y and eta on the top.
SurfaceCurve surface_reconstruction(const std::vector<double>& x,
                                    const std::vector<double>& eta_y_top,
                                    const std::vector<double>& eta_top);

struct BernoulliReport {
  double residual = 0.0;           ///< sup over the top of |u^2 + v^2 - mu + 2 alpha (eta - 1)|
  double stagnation_margin = 0.0;  ///< min over the top of u^2 + v^2
};

BernoulliReport bernoulli_residual(const StripSolver& solver, const WaveState& state);

struct ConjugateFlow {
  bool found = false;
  double d_star = 0.0;
  double s_gap = 0.0;              ///< quadrature of S-hat'
  double s_gap_closed_form = 0.0;  ///< alpha/2 (d*^2 - 1)
  bool convexity_ok = false;
  std::string message;
};

/// Conjugate depth of Q-hat(d) = mu/d^2 + 2 alpha (d - 1) in (0, 10], d != 1.
ConjugateFlow conjugate_flow(double mu, double alpha);
ConjugateFlow conjugate_flow(const LaminarFlow& flow, double alpha);

struct PhysicalSummary {
  double froude = 0.0;
  double mass_flux = 0.0;
  double wave_speed = 0.0;
  double crest_height = 0.0;
  std::vector<double> xi;
  std::vector<double> eta;
};

PhysicalSummary dimensional_restore(const StripSolver& solver, const WaveState& state, double g,
                                    double depth);

/// max |w| over the outermost active columns; measures truncation of the far field.
double far_field_leakage(const StripSolver& solver, const WaveState& state);

struct DiagnosticsReport {
  FlowForceProfile flow_force;
  BernoulliReport bernoulli;
  NodalReport nodal;
  SurfaceCurve surface;
  ConjugateFlow conjugate;
  double sigma_surface = 0.0;
  double sigma_domain = 0.0;
  double far_field_leakage = 0.0;
};

DiagnosticsReport diagnose(const StripSolver& solver, const WaveState& state, WaveType type,
                           std::size_t stride = kDefaultFlowForceStride);

}  // namespace vorwave
