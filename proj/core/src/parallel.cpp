#include "areaflow/parallel.hpp"

#include <algorithm>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace areaflow {

namespace {
int g_workers = 1;
}

void set_worker_count(int workers) {
  g_workers = std::max(1, workers);
#if defined(_OPENMP)
  omp_set_num_threads(g_workers);
#endif
}

int worker_count() { return g_workers; }

}  // namespace areaflow
