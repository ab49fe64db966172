#pragma once

namespace vorwave {

/// Applies the VORWAVE_THREADS cap (if set) to OpenMP and Eigen; returns the thread count in use.
int configure_threads();

/// Threads available to parallel regions.
int thread_count();

}  // namespace vorwave
