#pragma once

#include <optional>

#include "mext/tensor.hpp"

namespace mext {

// b -> fmap(phi_x, b): the value of the extension at (unit(x), b).
std::function<TElement(const TElement&)> left_shift_ext(const BinOpTable& op, int x,
                                                        const SpacePtr& out_root);

// Phi(a, b) = bind(a, x -> fmap(phi_x, b)).
TElement extend_direct(const BinOpTable& op, const TElement& a, const TElement& b,
                       const SpacePtr& out_root);

// Phi(a, b) = fmap(phi, a (x) b). Must agree with extend_direct everywhere;
// the program treats disagreement as an internal error.
TElement extend_via_tensor(const BinOpTable& op, const TElement& a, const TElement& b,
                           const SpacePtr& out_root);

struct ExtendedOp {
  MonadKind kind = MonadKind::id;
  BinOpTable op;
  SpacePtr carrier;        // materialized T-carrier of the endomorphic base op
  std::vector<int> cells;  // row-major indices into carrier atoms

  int at(int i, int j) const {
    return cells[static_cast<size_t>(i) * carrier->set.size() + j];
  }
};

// Full table of the extension, every cell computed by both constructions.
ExtendedOp extended_cayley_table(MonadKind k, const BinOpTable& op, const Limits& lim,
                                 bool allow_nonassociative = false);

// Classical oracles: setwise product, convolution, and the extension rerun
// with the literal upper-set multiplication for the family monads.
TElement oracle_setwise(const BinOpTable& op, const TElement& a, const TElement& b,
                        const SpacePtr& out_root);
TElement oracle_convolution(const BinOpTable& op, const TElement& a, const TElement& b,
                            const SpacePtr& out_root);
TElement extend_direct_upper(const BinOpTable& op, const TElement& a, const TElement& b,
                             const SpacePtr& out_root, const Limits& lim);

// Three sub-reports: unit compatibility, right shifts are free-algebra
// morphisms, left shifts at units are free-algebra morphisms.
std::vector<LawReport> check_extension_axioms(MonadKind k, const BinOpTable& op,
                                              const LawOptions& opt);

// Phi(Phi(a,b),c) = Phi(a,Phi(b,c)) over triples; runs for any op so that a
// non-associative base can be shown to break the extension too.
LawReport check_extension_associativity(MonadKind k, const BinOpTable& op,
                                        const LawOptions& opt);

std::optional<std::pair<int, int>> homomorphism_premise_violation(
    const BinOpTable& phi, const BinOpTable& psi, const FinMap& hx, const FinMap& hy,
    const FinMap& hz);

// If psi(hx x hy) = hz o phi pointwise, the same square commutes for the
// extensions; premise violations are rejected before anything runs.
LawReport check_homomorphism(MonadKind k, const BinOpTable& phi, const BinOpTable& psi,
                             const FinMap& hx, const FinMap& hy, const FinMap& hz,
                             const LawOptions& opt);

// Support of Phi(a,b) stays inside the subsemigroup generated by the two
// supports, and the restriction there is itself a valid element.
LawReport closure_check(MonadKind k, const BinOpTable& op, const LawOptions& opt);

std::vector<TElement> idempotents(const ExtendedOp& ext);

}  // namespace mext
