#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mext/finset.hpp"
#include "mext/rational.hpp"

namespace mext {

enum class MonadKind { id, exp, lambda, incl, prob };

std::string kind_name(MonadKind k);
MonadKind kind_from_name(std::string_view name);

// Payloads are canonical: sorted, deduplicated, antichain-minimized, rationals
// in lowest terms. Structural equality is then mathematical equality.
struct Point {
  int atom = 0;
  bool operator==(const Point&) const = default;
  bool operator<(const Point& o) const { return atom < o.atom; }
};

struct Subset {
  std::vector<int> atoms;  // sorted, nonempty
  bool operator==(const Subset&) const = default;
  bool operator<(const Subset& o) const { return atoms < o.atoms; }
};

struct Family {
  std::vector<std::vector<int>> members;  // antichain of minimal members, each sorted
  bool operator==(const Family&) const = default;
  bool operator<(const Family& o) const { return members < o.members; }
};

struct Dist {
  std::vector<std::pair<int, Rat>> mass;  // sorted by atom, weights positive, sum 1
  bool operator==(const Dist&) const = default;
  bool operator<(const Dist& o) const { return mass < o.mass; }
};

using Payload = std::variant<Point, Subset, Family, Dist>;

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

struct TElement {
  MonadKind kind = MonadKind::id;
  SpacePtr base;
  Payload payload;

  bool operator==(const TElement& o) const;
  bool operator!=(const TElement& o) const { return !(*this == o); }
  bool operator<(const TElement& o) const;  // payload order; bases must agree
};

// A carrier level. Root spaces have no decoding; materialized or support
// spaces decode each atom to the element (one level down) it denotes.
struct Space {
  FinSet set;
  SpacePtr inner;                 // null at the root
  std::vector<TElement> decoded;  // empty at the root, else one per atom
};

SpacePtr make_root_space(FinSet set);
SpacePtr make_space(FinSet set, SpacePtr inner, std::vector<TElement> decoded);
// Space over the listed elements, atoms labeled by their renders.
SpacePtr make_support_space(SpacePtr inner, std::vector<TElement> decoded);
// Restriction to a subset of atoms (same inner, decoded subsetted).
SpacePtr make_subspace(const SpacePtr& s, const std::vector<int>& keep);
FinMap inclusion_map(const SpacePtr& sub, const SpacePtr& full);

bool same_base(const SpacePtr& a, const SpacePtr& b);

// Canonicalizing constructors; throw shape_error on invalid input.
TElement make_point(MonadKind k, SpacePtr base, int atom);
TElement make_subset(MonadKind k, SpacePtr base, std::vector<int> atoms);
TElement make_family(MonadKind k, SpacePtr base, std::vector<std::vector<int>> members);
TElement make_dist(SpacePtr base, std::vector<std::pair<int, Rat>> mass);

std::vector<std::vector<int>> minimize_antichain(std::vector<std::vector<int>> members);

// Grammar: points bare, subsets "{a,b}", families "[{a},{b,c}]",
// distributions "{a:1/2, b:1/2}". parse is the exact inverse of render.
std::string render(const TElement& e);
TElement parse_element(MonadKind k, const SpacePtr& base, std::string_view text);

// Atoms the payload mentions, sorted. For the zoo monads this coincides with
// the minimal carrier the element restricts to (tested against brute force).
std::vector<int> used_atoms(const TElement& e);

}  // namespace mext
