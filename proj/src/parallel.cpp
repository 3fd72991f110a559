#include "certreg/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace certreg {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("CERTREG_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
#endif
}

}  // namespace certreg
