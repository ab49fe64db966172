#include "vorwave/parallel.hpp"

#include <cstdlib>
#include <string>

#include <Eigen/Core>

#ifdef VORWAVE_HAVE_OPENMP
#include <omp.h>
#endif

#include "vorwave/errors.hpp"

namespace vorwave {

int configure_threads() {
  if (const char* env = std::getenv("VORWAVE_THREADS"); env && *env) {
    int n = 0;
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("VORWAVE_THREADS is not an integer: ") + env);
    }
    if (n < 1) throw DomainError("VORWAVE_THREADS must be positive");
#ifdef VORWAVE_HAVE_OPENMP
    omp_set_num_threads(n);
#endif
    Eigen::setNbThreads(n);
  }
  return thread_count();
}

int thread_count() {
#ifdef VORWAVE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace vorwave
