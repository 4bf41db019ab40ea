#include "pertlab/parallel.hpp"

#include <omp.h>

namespace pertlab::par {

int max_workers() { return omp_get_max_threads(); }

WorkerScope::WorkerScope(int workers) : previous_(omp_get_max_threads()) {
  omp_set_num_threads(workers > 0 ? workers : 1);
}

WorkerScope::~WorkerScope() { omp_set_num_threads(previous_); }

}  // namespace pertlab::par
