#pragma once

#include "mext/report.hpp"
#include "mext/sweep.hpp"
#include "mext/zoo.hpp"

namespace mext {

struct LawOptions {
  Mode mode = Mode::exhaustive;
  uint64_t seed = 42;
  long long samples = 10000;
  Limits limits;
  Exec exec = default_exec();
};

// Materialized tower prefix [X, TX, T^2 X, ...]; stops quietly at the first
// level a size guard or capability refuses (callers then sample instead).
std::vector<SpacePtr> materialize_tower(MonadKind k, const SpacePtr& root, int levels,
                                        const Limits& lim);

// Element of T^level X over the tower. Missing levels are stood in for by
// support spaces over a few sampled lower-level elements, which is sound
// because every structure map acts support-wise.
TElement sample_tower(MonadKind k, const std::vector<SpacePtr>& tower, int level, Rng& rng);

// Unit laws quantified over T^2 X (at the free level), associativity over
// T^3 X. Guard-forced downgrades are flagged per law, never silent.
std::vector<LawReport> check_monad_laws(MonadKind k, const FinSet& x, const LawOptions& opt);

// h is an element-level map from TX elements (over tx->inner) into TZ
// elements over one fixed base; tx must be a materialized carrier.
LawReport check_algebra_morphism(MonadKind k, const SpacePtr& tx,
                                 const std::function<TElement(const TElement&)>& h,
                                 const LawOptions& opt);

// h(a) = mult(T(h o unit)(a)): a free-algebra morphism is determined by its
// values on units. Precondition: h passes check_algebra_morphism.
LawReport check_free_determination(MonadKind k, const SpacePtr& tx,
                                   const std::function<TElement(const TElement&)>& h,
                                   const LawOptions& opt);

// Shared driver: sweep an instance space, rebuild the first failure.
struct LawInstance {
  std::vector<std::string> inputs;
  std::string lhs;
  std::string rhs;
  bool ok = true;
};

LawReport run_law(const std::string& name, long long n, Mode mode_used, bool fallback,
                  const std::function<LawInstance(long long)>& eval, Exec exec);

}  // namespace mext
