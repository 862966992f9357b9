#pragma once

#include "mext/monad.hpp"

namespace mext {

// Root space over the row-major pair labels of the two bases.
SpacePtr pair_space(const SpacePtr& x, const SpacePtr& y);

// a (x) b = bind(a, x -> fmap(y -> (x,y), b)), over pair_space(a.base, b.base).
TElement tensor(const TElement& a, const TElement& b);

// Independent oracles: Cartesian product of subsets, product distribution.
TElement oracle_tensor_exp(const TElement& a, const TElement& b);
TElement oracle_tensor_prob(const TElement& a, const TElement& b);

// unit(x) (x) unit(y) = unit((x,y)), exhaustive over the two carriers.
LawReport check_tensor_unit(MonadKind k, const FinSet& x, const FinSet& y,
                            const LawOptions& opt);

// fmap(hx x hy)(a (x) b) = fmap(hx)(a) (x) fmap(hy)(b).
LawReport check_tensor_naturality(MonadKind k, const FinMap& hx, const FinMap& hy,
                                  const LawOptions& opt);

// (a (x) b) (x) c = a (x) (b (x) c) modulo the regrouping bijection.
LawReport check_tensor_associativity(MonadKind k, const FinSet& x, const FinSet& y,
                                     const FinSet& z, const LawOptions& opt);

}  // namespace mext
