#include "nlr/parallel.h"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace nlr {
namespace {
int g_default_threads = omp_get_max_threads();
}

void set_num_threads(int threads) {
  omp_set_num_threads(threads > 0 ? threads : g_default_threads);
}

int num_threads() { return omp_get_max_threads(); }

int threads_from_env(int fallback) {
  const char* value = std::getenv("NLR_THREADS");
  if (value == nullptr) return fallback;
  try {
    const int threads = std::stoi(value);
    return threads >= 0 ? threads : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

ScopedThreads::ScopedThreads(int threads) : previous_(num_threads()) {
  set_num_threads(threads);
}

ScopedThreads::~ScopedThreads() { set_num_threads(previous_); }

}  // namespace nlr
