#include "ladderlab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace ladderlab {

int max_threads() {
  static const int cached = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("LADDERLAB_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap > 0 && cap < n) n = cap;
        if (cap > 0) omp_set_num_threads(n);
      } catch (...) {
      }
    }
    return n < 1 ? 1 : n;
  }();
  return cached;
}

bool run_parallel(ExecPolicy policy, std::size_t count) {
  switch (policy) {
    case ExecPolicy::serial: return false;
    case ExecPolicy::parallel: return true;
    case ExecPolicy::automatic: return count >= kParallelThreshold && max_threads() > 1;
  }
  return false;
}

}  // namespace ladderlab
