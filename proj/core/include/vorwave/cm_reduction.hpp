#pragma once

#include <string>
#include <vector>

#include "vorwave/laminar.hpp"
#include "vorwave/sturm.hpp"

namespace vorwave {

enum class WaveType { elevation, depression };

std::string to_string(WaveType t);

/// Correction profiles g, k on the eigen grid, with the multipliers of the bordered solve.
struct Corrections {
  std::vector<double> g;
  std::vector<double> k;
  double lambda_g = 0.0;  ///< compatibility defect; zero up to roundoff
  double lambda_k = 0.0;
};

struct CMCoefficients {
  std::vector<double> y;
  std::vector<double> theta;
  double c0 = 0.0;
  double m0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double f101 = 0.0;
  double f200 = 0.0;
  std::vector<double> g_profile;
  std::vector<double> k_profile;
  WaveType wave_type = WaveType::elevation;
};

/// Tolerance on |nu0| accepted as criticality.
inline constexpr double kCriticalNuTolerance = 1e-6;
inline constexpr double kDegenerateM0 = 1e-10;

/// Theta, C0, M0 and the reduced coefficients; fills g, k through solve_corrections.
/// Throws DomainError off criticality and DegeneracyError when M0 vanishes.
CMCoefficients compute_coefficients(const LaminarFlow& flow, const EigenSolution& eig);

/// Second-order bordered solve of the g and k problems, gauge orthogonal to phi0.
Corrections solve_corrections(const LaminarFlow& flow, const EigenSolution& eig,
                              const CMCoefficients& cm);

}  // namespace vorwave
