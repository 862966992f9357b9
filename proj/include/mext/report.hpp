#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mext {

enum class Mode { exhaustive, sampled };

inline std::string mode_name(Mode m) { return m == Mode::exhaustive ? "exhaustive" : "sampled"; }

struct Counterexample {
  std::vector<std::string> inputs;
  std::string lhs;
  std::string rhs;
};

struct LawReport {
  std::string law;
  bool pass = true;
  long long instances = 0;
  Mode mode_used = Mode::exhaustive;
  // An exhaustive request hit a resource guard and was downgraded; the
  // downgrade is always visible, never silent.
  bool sampled_fallback = false;
  std::optional<Counterexample> cx;
};

inline bool all_pass(const std::vector<LawReport>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace mext
