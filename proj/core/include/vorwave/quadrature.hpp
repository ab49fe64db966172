#pragma once

#include <span>

namespace vorwave {

/// Composite Simpson on uniform samples; an odd panel count closes with the 3/8 rule.
double simpson(std::span<const double> f, double h);

/// Composite trapezoid on uniform samples.
double trapezoid(std::span<const double> f, double h);

}  // namespace vorwave
