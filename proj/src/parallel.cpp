#include "tclab/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tclab {

#ifdef _OPENMP
namespace {
const int kDefaultThreads = omp_get_max_threads();
}
#endif

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n > 0 ? n : kDefaultThreads);
#else
  (void)n;
#endif
}

}  // namespace tclab
