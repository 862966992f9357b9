#include "mext/sweep.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mext {

Exec default_exec() {
#ifdef _OPENMP
  return Exec::parallel;
#else
  return Exec::serial;
#endif
}

namespace {

SweepOutcome outcome_for(long long n, long long fail) {
  if (fail >= n) return {true, -1, n};
  return {false, fail, fail + 1};
}

SweepOutcome sweep_serial(long long n, const std::function<bool(long long)>& pred) {
  for (long long i = 0; i < n; ++i)
    if (!pred(i)) return outcome_for(n, i);
  return outcome_for(n, n);
}

}  // namespace

SweepOutcome sweep(long long n, const std::function<bool(long long)>& pred, Exec ex) {
#ifdef _OPENMP
  if (ex == Exec::parallel) {
    std::atomic<long long> fail{n};
    #pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
      // Skipping indices above a known failure cannot change the minimum.
      if (i > fail.load(std::memory_order_relaxed)) continue;
      if (!pred(i)) {
        long long cur = fail.load(std::memory_order_relaxed);
        while (i < cur && !fail.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
        }
      }
    }
    return outcome_for(n, fail.load());
  }
#else
  (void)ex;
#endif
  return sweep_serial(n, pred);
}

}  // namespace mext
