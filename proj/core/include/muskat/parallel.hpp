#pragma once

#include <cstddef>
#include <span>

namespace muskat {

/// Thread cap from MUSKAT_THREADS (0 or unset = runtime default). Applied once per process.
int configure_threads_from_env();

/// Explicit cap; n <= 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

/// Pairwise (tree) summation in a fixed order; the result depends only on the values,
/// not on how the caller partitioned the work. Overwrites `scratch`.
double pairwise_sum(std::span<double> scratch);

}  // namespace muskat
