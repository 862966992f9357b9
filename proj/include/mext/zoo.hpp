#pragma once

#include <functional>
#include <vector>

#include "mext/element.hpp"
#include "mext/rng.hpp"

namespace mext {

struct Limits {
  long long max_carrier = 1'000'000;  // atoms per materialized level
  int family_base_limit = 4;          // lambda/incl enumeration base bound
};

// Structure maps. mult expects its argument to live over a decoded space
// (materialized carrier or support space); the result lives one level down.
TElement unit(MonadKind k, const SpacePtr& base, int atom);
TElement fmap(const FinMap& f, const TElement& a, const SpacePtr& dst);
TElement mult(const TElement& m);

// Kleisli plumbing. fmap_elem(a, k) applies T to the element-level map k
// (all images over one shared base); the result lives over a support space
// of the distinct images. bind(a, k) = mult(fmap_elem(a, k)).
TElement fmap_elem(const TElement& a, const std::function<TElement(int)>& k);
TElement bind(const TElement& a, const std::function<TElement(int)>& k);

bool valid_element(const TElement& e);

bool enumerable(MonadKind k);
std::vector<TElement> enumerate_elements(MonadKind k, const SpacePtr& base, const Limits& lim);
SpacePtr materialize(MonadKind k, const SpacePtr& base, const Limits& lim);

TElement sample_element(MonadKind k, const SpacePtr& base, Rng& rng);

// Minimal subset of the base the element restricts to, found by searching
// subsets in increasing size and testing membership in the inclusion image.
std::vector<int> support_bruteforce(const TElement& e, const Limits& lim);

// Test oracles, tiny bases only: the literal upper-set multiplication
// mu(M) = {A : A-plus in M} over a fully materialized carrier, and maximal
// linked systems generated by choosing one set from each complement pair.
TElement mult_via_upper_sets(const TElement& m);
std::vector<TElement> enumerate_mls_pair_selection(const SpacePtr& base);

}  // namespace mext
