#pragma once

#include <functional>

namespace mext {

enum class Exec { serial, parallel };

Exec default_exec();

struct SweepOutcome {
  bool pass = true;
  long long fail_index = -1;  // lowest failing index, -1 when clean
  long long instances = 0;    // n on pass, fail_index + 1 on fail, backend-independent
};

// Evaluates pred over [0, n). The parallel backend partitions the range with
// OpenMP and keeps the lowest failing index, so both backends report the
// identical outcome; serial is the reference implementation. pred must not
// throw — callers re-run the failing index to build their counterexample.
SweepOutcome sweep(long long n, const std::function<bool(long long)>& pred, Exec ex);

}  // namespace mext
