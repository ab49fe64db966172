#include "vorwave/quadrature.hpp"

#include "vorwave/errors.hpp"

namespace vorwave {

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) throw DomainError("trapezoid needs at least two samples");
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t k = 1; k + 1 < f.size(); ++k) sum += f[k];
  return sum * h;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3) {
    if (n == 2) return trapezoid(f, h);
    throw DomainError("simpson needs at least two samples");
  }
  std::size_t panels = n - 1;
  double tail = 0.0;
  if (panels % 2 == 1) {
    if (panels < 3) return trapezoid(f, h);
    tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
    panels -= 3;
  }
  double sum = f[0] + f[panels];
  for (std::size_t k = 1; k < panels; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * f[k];
  return sum * h / 3.0 + tail;
}

}  // namespace vorwave
