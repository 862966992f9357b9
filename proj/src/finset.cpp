#include "mext/finset.hpp"

#include <algorithm>

namespace mext {

FinSet::FinSet(std::vector<std::string> elements) : elements_(std::move(elements)) {
  for (int i = 0; i < static_cast<int>(elements_.size()); ++i) {
    auto [it, fresh] = index_.emplace(elements_[i], i);
    if (!fresh) throw shape_error("duplicate atom label: " + elements_[i]);
  }
}

FinSet FinSet::canonical(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinSet(std::move(labels));
}

int FinSet::index_of(std::string_view label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : it->second;
}

int FinSet::require(std::string_view label) const {
  int i = index_of(label);
  if (i < 0) throw shape_error("unknown atom label: " + std::string(label));
  return i;
}

FinMap::FinMap(FinSet dom, FinSet cod, std::vector<int> tab)
    : domain(std::move(dom)), codomain(std::move(cod)), table(std::move(tab)) {
  if (static_cast<int>(table.size()) != domain.size())
    throw shape_error("map table size does not match domain");
  for (int v : table)
    if (v < 0 || v >= codomain.size()) throw shape_error("map value out of range");
}

FinMap FinMap::identity(const FinSet& x) {
  std::vector<int> tab(x.size());
  for (int i = 0; i < x.size(); ++i) tab[i] = i;
  return FinMap(x, x, std::move(tab));
}

FinMap FinMap::constant(const FinSet& dom, const FinSet& cod, int value) {
  return FinMap(dom, cod, std::vector<int>(dom.size(), value));
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.codomain != g.domain) throw shape_error("compose: codomain of f is not the domain of g");
  std::vector<int> tab(f.domain.size());
  for (int i = 0; i < f.domain.size(); ++i) tab[i] = g.table[f.table[i]];
  return FinMap(f.domain, g.codomain, std::move(tab));
}

FinSet product(const FinSet& x, const FinSet& y) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(x.size()) * y.size());
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < y.size(); ++j)
      labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
  return FinSet(std::move(labels));
}

FinMap product_map(const FinMap& hx, const FinMap& hy) {
  FinSet dom = product(hx.domain, hy.domain);
  FinSet cod = product(hx.codomain, hy.codomain);
  std::vector<int> tab(static_cast<size_t>(dom.size()));
  for (int i = 0; i < hx.domain.size(); ++i)
    for (int j = 0; j < hy.domain.size(); ++j)
      tab[static_cast<size_t>(i) * hy.domain.size() + j] =
          hx.table[i] * hy.codomain.size() + hy.table[j];
  return FinMap(std::move(dom), std::move(cod), std::move(tab));
}

FinMap regroup_left(const FinSet& x, const FinSet& y, const FinSet& z) {
  FinSet dom = product(x, product(y, z));
  FinSet cod = product(product(x, y), z);
  // Row-major indices agree on both groupings.
  std::vector<int> tab(dom.size());
  for (int i = 0; i < dom.size(); ++i) tab[i] = i;
  return FinMap(std::move(dom), std::move(cod), std::move(tab));
}

BinOpTable::BinOpTable(FinSet l, FinSet r, FinSet o, std::vector<int> c)
    : left(std::move(l)), right(std::move(r)), out(std::move(o)), cells(std::move(c)) {
  if (cells.size() != static_cast<size_t>(left.size()) * right.size())
    throw shape_error("operation table has wrong shape");
  for (int v : cells)
    if (v < 0 || v >= out.size()) throw shape_error("operation table cell out of range");
}

FinMap BinOpTable::left_shift(int x) const {
  std::vector<int> tab(right.size());
  for (int j = 0; j < right.size(); ++j) tab[j] = at(x, j);
  return FinMap(right, out, std::move(tab));
}

FinMap BinOpTable::right_shift(int y) const {
  std::vector<int> tab(left.size());
  for (int i = 0; i < left.size(); ++i) tab[i] = at(i, y);
  return FinMap(left, out, std::move(tab));
}

FinMap BinOpTable::as_map() const {
  return FinMap(product(left, right), out, cells);
}

bool is_associative(const BinOpTable& op) {
  if (!op.endomorphic()) throw shape_error("associativity needs X = Y = Z");
  int n = op.left.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (op.at(op.at(x, y), z) != op.at(x, op.at(y, z))) return false;
  return true;
}

namespace {

// DFS over cells in row-major order. For the associative-only stream we
// prune on every triple whose four participating cells are already fixed,
// which is what makes n = 4 (4^16 raw tables) tractable.
struct OpSearch {
  int n;
  bool associative_only;
  const std::function<void(const BinOpTable&)>& yield;
  std::vector<int> cells;
  FinSet base;

  int at(int x, int y) const { return cells[x * n + y]; }

  bool consistent(int filled) const {
    if (!associative_only) return true;
    int cx = filled / n, cy = filled % n;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          // Only triples whose last-needed cell is the one just set.
          int xy = at(x, y);
          if (xy < 0) continue;
          int yz = at(y, z);
          if (yz < 0) continue;
          int l = at(xy, z), r = at(x, yz);
          if (l < 0 || r < 0) continue;
          bool touches = (x == cx && y == cy) || (y == cx && z == cy) ||
                         (xy == cx && z == cy) || (x == cx && yz == cy);
          if (touches && l != r) return false;
        }
    return true;
  }

  void run(int filled) {
    if (filled == n * n) {
      yield(BinOpTable(base, base, base, cells));
      return;
    }
    for (int v = 0; v < n; ++v) {
      cells[filled] = v;
      if (consistent(filled)) run(filled + 1);
    }
    cells[filled] = -1;
  }
};

}  // namespace

void enumerate_binary_ops(int n, bool associative_only,
                          const std::function<void(const BinOpTable&)>& yield) {
  if (n < 1) throw guard_error("enumerate_binary_ops: n must be positive");
  if (n > 4) throw guard_error("enumerate_binary_ops: n > 4 is not enumerable");
  if (n == 4 && !associative_only)
    throw guard_error("enumerate_binary_ops: unfiltered n = 4 would stream 4^16 tables");
  OpSearch search{n, associative_only, yield, std::vector<int>(n * n, -1),
                  FinSet::canonical(n)};
  search.run(0);
}

std::vector<BinOpTable> enumerate_binary_ops_vec(int n, bool associative_only) {
  std::vector<BinOpTable> out;
  enumerate_binary_ops(n, associative_only, [&](const BinOpTable& t) { out.push_back(t); });
  return out;
}

}  // namespace mext
