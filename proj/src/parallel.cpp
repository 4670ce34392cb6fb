#include "idstates/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "idstates/error.hpp"

namespace idstates {

namespace {
int default_threads() {
  static const int n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_thread_limit(int threads) {
  if (threads < 0) throw InputError("thread count must be nonnegative");
  const int base = default_threads();
  omp_set_num_threads(threads == 0 ? base : threads);
}

void apply_thread_limit_from_env() {
  const char* raw = std::getenv("IDSTATES_THREADS");
  if (raw == nullptr || *raw == '\0') return;
  int threads = 0;
  try {
    threads = std::stoi(raw);
  } catch (const std::exception&) {
    throw InputError(std::string("IDSTATES_THREADS is not an integer: ") + raw);
  }
  set_thread_limit(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace idstates
