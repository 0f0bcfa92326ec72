#include "muskat/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace muskat {

int configure_threads_from_env() {
  const char* env = std::getenv("MUSKAT_THREADS");
  int n = 0;
  if (env != nullptr) {
    try {
      n = std::stoi(env);
    } catch (...) {
      n = 0;
    }
  }
  set_thread_count(n);
  return thread_count();
}

void set_thread_count(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n > 0 ? n : omp_get_num_procs());
#else
  (void)n;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double pairwise_sum(std::span<double> v) {
  std::size_t n = v.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) v[half] = v[n - 1];
    n = half + n % 2;
  }
  return v[0];
}

}  // namespace muskat
