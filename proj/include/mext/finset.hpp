#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mext/errors.hpp"

namespace mext {

// A finite set of named atoms. Order is part of the value: indices into
// `elements` are how everything else refers to atoms, so the order must be
// reproducible (input order for user sets, label-lexicographic for
// generated carriers).
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> elements);

  // {"0", "1", ..., "n-1"}
  static FinSet canonical(int n);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& label(int i) const { return elements_.at(i); }
  const std::vector<std::string>& labels() const { return elements_; }

  // -1 when absent.
  int index_of(std::string_view label) const;
  int require(std::string_view label) const;

  bool operator==(const FinSet& other) const { return elements_ == other.elements_; }
  bool operator!=(const FinSet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> elements_;
  std::map<std::string, int, std::less<>> index_;
};

// A total function between finite sets, tabulated on the domain.
struct FinMap {
  FinSet domain;
  FinSet codomain;
  std::vector<int> table;  // table[i] = codomain index of domain atom i

  FinMap() = default;
  FinMap(FinSet dom, FinSet cod, std::vector<int> tab);

  static FinMap identity(const FinSet& x);
  static FinMap constant(const FinSet& dom, const FinSet& cod, int value);

  int apply(int i) const { return table.at(i); }
};

// g after f.
FinMap compose(const FinMap& g, const FinMap& f);

// Cartesian product with pair atoms "(l,r)" in row-major order:
// index of (i,j) is i*|y| + j.
FinSet product(const FinSet& x, const FinSet& y);

// h_x x h_y : X x Y -> X' x Y' on the row-major product sets.
FinMap product_map(const FinMap& hx, const FinMap& hy);

// The canonical triple product is (X x Y) x Z. Row-major flattening makes
// the regrouping bijection X x (Y x Z) -> (X x Y) x Z the identity on
// indices; only the pair labels differ.
FinMap regroup_left(const FinSet& x, const FinSet& y, const FinSet& z);

// A binary operation phi : X x Y -> Z as a total table of out-indices.
struct BinOpTable {
  FinSet left;
  FinSet right;
  FinSet out;
  std::vector<int> cells;  // row-major |left| x |right|

  BinOpTable() = default;
  BinOpTable(FinSet l, FinSet r, FinSet o, std::vector<int> c);

  int at(int i, int j) const { return cells.at(static_cast<size_t>(i) * right.size() + j); }
  bool endomorphic() const { return left == right && left == out; }

  // Left shift phi_x : Y -> Z for a fixed x.
  FinMap left_shift(int x) const;
  // Right shift phi^y : X -> Z for a fixed y.
  FinMap right_shift(int y) const;
  // phi as a map on the row-major product set.
  FinMap as_map() const;
};

// Exhaustive |X|^3 check of phi(phi(x,y),z) = phi(x,phi(y,z)).
// Requires left = right = out.
bool is_associative(const BinOpTable& op);

// All n^(n*n) tables on the canonical n-element set in row-major
// lexicographic cell order, optionally restricted to associative ones.
// n = 4 is only reachable with associative_only (the filter prunes during
// generation); larger n is refused.
void enumerate_binary_ops(int n, bool associative_only,
                          const std::function<void(const BinOpTable&)>& yield);
std::vector<BinOpTable> enumerate_binary_ops_vec(int n, bool associative_only);

}  // namespace mext
