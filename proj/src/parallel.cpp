#include "rmt/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rmt {
namespace {

int default_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int& cap_storage() {
  static int cap = 0;
  return cap;
}

}  // namespace

int worker_count() {
  const int cap = cap_storage();
  return cap > 0 ? cap : default_workers();
}

void set_worker_cap(int cap) { cap_storage() = cap < 0 ? 0 : cap; }

int configure_workers_from_env() {
  if (const char* env = std::getenv("RMT_THREADS")) {
    try {
      set_worker_cap(std::stoi(env));
    } catch (const std::exception&) {
      set_worker_cap(0);
    }
  }
  return worker_count();
}

}  // namespace rmt
