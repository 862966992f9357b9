#include "mext/zoo.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "mext/errors.hpp"

namespace mext {

namespace {

using Mask = uint32_t;

Mask to_mask(const std::vector<int>& atoms) {
  Mask m = 0;
  for (int a : atoms) m |= Mask(1) << a;
  return m;
}

std::vector<int> from_mask(Mask m) {
  std::vector<int> atoms;
  for (int i = 0; m >> i; ++i)
    if (m & (Mask(1) << i)) atoms.push_back(i);
  return atoms;
}

std::vector<Mask> member_masks(const Family& f) {
  std::vector<Mask> out;
  out.reserve(f.members.size());
  for (const auto& m : f.members) out.push_back(to_mask(m));
  return out;
}

bool pairwise_linked(const std::vector<Mask>& ms) {
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = i + 1; j < ms.size(); ++j)
      if ((ms[i] & ms[j]) == 0) return false;
  return true;
}

// Maximality: every subset meeting all members already lies in the upward
// closure. The converse holds for any linked family.
bool maximal_linked(int n, const std::vector<Mask>& ms) {
  Mask full = (Mask(1) << n) - 1;
  for (Mask a = 1; a <= full; ++a) {
    bool meets_all = true;
    for (Mask m : ms)
      if ((a & m) == 0) { meets_all = false; break; }
    if (!meets_all) continue;
    bool in_up = false;
    for (Mask m : ms)
      if ((m & ~a) == 0) { in_up = true; break; }
    if (!in_up) return false;
  }
  return true;
}

const Family& family_of(const TElement& e) { return std::get<Family>(e.payload); }

// Images of maximal linked systems stay maximal linked under any map; a
// violation means a structure-map bug, so verify whenever the check fits.
void check_family_invariant(const TElement& e) {
  if (e.kind != MonadKind::lambda) return;
  int n = e.base->set.size();
  if (n > 16) return;
  auto ms = member_masks(family_of(e));
  if (!pairwise_linked(ms) || !maximal_linked(n, ms))
    throw internal_error("lambda result is not maximal linked: " + render(e));
}

TElement relabel(const TElement& a, const std::function<int(int)>& f, const SpacePtr& dst) {
  auto image = [&](int x) {
    int y = f(x);
    if (y < 0 || y >= dst->set.size()) throw shape_error("relabel image out of range");
    return y;
  };
  TElement out;
  if (const auto* p = std::get_if<Point>(&a.payload)) {
    out = make_point(a.kind, dst, image(p->atom));
  } else if (const auto* s = std::get_if<Subset>(&a.payload)) {
    std::vector<int> atoms;
    atoms.reserve(s->atoms.size());
    for (int x : s->atoms) atoms.push_back(image(x));
    out = make_subset(a.kind, dst, std::move(atoms));
  } else if (const auto* fam = std::get_if<Family>(&a.payload)) {
    std::vector<std::vector<int>> members;
    members.reserve(fam->members.size());
    for (const auto& m : fam->members) {
      std::vector<int> im;
      im.reserve(m.size());
      for (int x : m) im.push_back(image(x));
      members.push_back(std::move(im));
    }
    out = make_family(a.kind, dst, std::move(members));
    check_family_invariant(out);
  } else {
    const auto& d = std::get<Dist>(a.payload);
    std::vector<std::pair<int, Rat>> mass;
    mass.reserve(d.mass.size());
    for (const auto& [x, w] : d.mass) mass.emplace_back(image(x), w);
    out = make_dist(dst, std::move(mass));
  }
  return out;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Minimal members of mu(M) are the minimal choice-unions: pick one minimal
// member from each family named inside a member of M and take the union.
// Dominated partial unions can never produce new minimal totals, so the
// accumulator is pruned to an antichain at every step.
std::vector<std::vector<int>> union_product(const TElement& m) {
  const Space& space = *m.base;
  std::vector<std::vector<int>> all;
  for (const auto& mem : family_of(m).members) {
    std::vector<std::vector<int>> acc = {{}};
    for (int f : mem) {
      const auto& sub = family_of(space.decoded[f]).members;
      std::set<std::vector<int>> next;
      for (const auto& u : acc)
        for (const auto& s : sub) next.insert(sorted_union(u, s));
      acc = minimize_antichain({next.begin(), next.end()});
    }
    all.insert(all.end(), acc.begin(), acc.end());
  }
  return all;
}

void check_decoded_space(const TElement& m) {
  if (!m.base->inner || m.base->decoded.empty())
    throw shape_error("mult needs a decoded carrier or support space");
  for (int x : used_atoms(m))
    if (m.base->decoded[x].kind != m.kind)
      throw shape_error("mult over a space decoding a different monad");
}

int pick_distinct(Rng& rng, int n, int count, std::vector<int>& out) {
  out.clear();
  while (static_cast<int>(out.size()) < count) {
    int v = static_cast<int>(rng.below(n));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return count;
}

// One set from each complement pair, kept linked greedily. If both halves
// of a pair failed, two selected sets would sit inside complementary halves
// and be disjoint, contradicting linkedness, so the fallback always works
// and every maximal linked system is reachable under some preference run.
std::vector<std::vector<int>> pair_selection(int s, const std::function<bool()>& prefer_first) {
  Mask full = (Mask(1) << s) - 1;
  std::vector<Mask> selected = {full};
  for (Mask m = 1; m < full; ++m) {
    Mask comp = full & ~m;
    if (m > comp) continue;
    Mask first = prefer_first() ? m : comp;
    Mask second = full & ~first;
    bool ok = true;
    for (Mask sel : selected)
      if ((sel & first) == 0) { ok = false; break; }
    Mask chosen = ok ? first : second;
    selected.push_back(chosen);
  }
  std::vector<std::vector<int>> members;
  members.reserve(selected.size());
  for (Mask m : selected) members.push_back(from_mask(m));
  return members;
}

void antichain_dfs(int n, bool linked_only, std::vector<Mask>& chosen,
                   Mask start, const std::function<void(const std::vector<Mask>&)>& yield) {
  Mask full = (Mask(1) << n) - 1;
  for (Mask m = start; m <= full; ++m) {
    bool ok = true;
    for (Mask c : chosen) {
      if ((c & ~m) == 0 || (m & ~c) == 0) { ok = false; break; }  // comparable
      if (linked_only && (c & m) == 0) { ok = false; break; }
    }
    if (!ok) continue;
    chosen.push_back(m);
    yield(chosen);
    antichain_dfs(n, linked_only, chosen, m + 1, yield);
    chosen.pop_back();
  }
}

}  // namespace

TElement unit(MonadKind k, const SpacePtr& base, int atom) {
  switch (k) {
    case MonadKind::id: return make_point(k, base, atom);
    case MonadKind::exp: return make_subset(k, base, {atom});
    case MonadKind::lambda:
    case MonadKind::incl: return make_family(k, base, {{atom}});
    case MonadKind::prob: return make_dist(base, {{atom, Rat(1)}});
  }
  throw internal_error("bad monad kind");
}

TElement fmap(const FinMap& f, const TElement& a, const SpacePtr& dst) {
  if (f.domain != a.base->set) throw shape_error("fmap: map domain is not the element base");
  if (f.codomain != dst->set) throw shape_error("fmap: map codomain is not the target base");
  return relabel(a, [&](int x) { return f.apply(x); }, dst);
}

TElement mult(const TElement& m) {
  check_decoded_space(m);
  const Space& space = *m.base;
  const SpacePtr& inner = space.inner;
  switch (m.kind) {
    case MonadKind::id:
      return space.decoded[std::get<Point>(m.payload).atom];
    case MonadKind::exp: {
      std::vector<int> atoms;
      for (int i : std::get<Subset>(m.payload).atoms) {
        const auto& sub = std::get<Subset>(space.decoded[i].payload).atoms;
        atoms.insert(atoms.end(), sub.begin(), sub.end());
      }
      return make_subset(m.kind, inner, std::move(atoms));
    }
    case MonadKind::lambda:
    case MonadKind::incl: {
      TElement out = make_family(m.kind, inner, union_product(m));
      check_family_invariant(out);
      return out;
    }
    case MonadKind::prob: {
      std::map<int, Rat> acc;
      for (const auto& [i, w] : std::get<Dist>(m.payload).mass)
        for (const auto& [j, wj] : std::get<Dist>(space.decoded[i].payload).mass)
          acc[j] += w * wj;
      return make_dist(inner, {acc.begin(), acc.end()});
    }
  }
  throw internal_error("bad monad kind");
}

TElement fmap_elem(const TElement& a, const std::function<TElement(int)>& k) {
  std::vector<TElement> images;
  std::vector<int> remap(a.base->set.size(), -1);
  SpacePtr target;
  for (int x : used_atoms(a)) {
    TElement e = k(x);
    if (e.kind != a.kind) throw shape_error("fmap_elem: image from a different monad");
    if (!target)
      target = e.base;
    else if (!same_base(target, e.base))
      throw shape_error("fmap_elem: heterogeneous image bases");
    int idx = -1;
    for (size_t j = 0; j < images.size(); ++j)
      if (images[j] == e) { idx = static_cast<int>(j); break; }
    if (idx < 0) {
      images.push_back(std::move(e));
      idx = static_cast<int>(images.size()) - 1;
    }
    remap[x] = idx;
  }
  SpacePtr mid = make_support_space(target, std::move(images));
  return relabel(a, [&](int x) {
    if (remap[x] < 0) throw internal_error("fmap_elem touched a non-support atom");
    return remap[x];
  }, mid);
}

TElement bind(const TElement& a, const std::function<TElement(int)>& k) {
  return mult(fmap_elem(a, k));
}

bool valid_element(const TElement& e) {
  int n = e.base->set.size();
  auto in_range = [n](int a) { return a >= 0 && a < n; };
  auto strictly_sorted = [](const std::vector<int>& v) {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i - 1] >= v[i]) return false;
    return true;
  };
  switch (e.kind) {
    case MonadKind::id: {
      const auto* p = std::get_if<Point>(&e.payload);
      return p && in_range(p->atom);
    }
    case MonadKind::exp: {
      const auto* s = std::get_if<Subset>(&e.payload);
      return s && !s->atoms.empty() && strictly_sorted(s->atoms) &&
             std::all_of(s->atoms.begin(), s->atoms.end(), in_range);
    }
    case MonadKind::lambda:
    case MonadKind::incl: {
      const auto* f = std::get_if<Family>(&e.payload);
      if (!f || f->members.empty()) return false;
      for (const auto& m : f->members)
        if (m.empty() || !strictly_sorted(m) || !std::all_of(m.begin(), m.end(), in_range))
          return false;
      if (!std::is_sorted(f->members.begin(), f->members.end()) ||
          std::adjacent_find(f->members.begin(), f->members.end()) != f->members.end())
        return false;
      if (minimize_antichain(f->members) != f->members) return false;
      if (e.kind == MonadKind::incl) return true;
      if (n > 20) throw guard_error("maximality check infeasible over this base");
      auto ms = member_masks(*f);
      return pairwise_linked(ms) && maximal_linked(n, ms);
    }
    case MonadKind::prob: {
      const auto* d = std::get_if<Dist>(&e.payload);
      if (!d || d->mass.empty()) return false;
      Rat total(0);
      int prev = -1;
      for (const auto& [a, w] : d->mass) {
        if (!in_range(a) || a <= prev || w <= Rat(0)) return false;
        prev = a;
        total += w;
      }
      return total == Rat(1);
    }
  }
  return false;
}

bool enumerable(MonadKind k) { return k != MonadKind::prob; }

std::vector<TElement> enumerate_elements(MonadKind k, const SpacePtr& base, const Limits& lim) {
  int n = base->set.size();
  std::vector<TElement> out;
  switch (k) {
    case MonadKind::id: {
      if (n > lim.max_carrier) throw guard_error("carrier exceeds the size guard");
      for (int i = 0; i < n; ++i) out.push_back(make_point(k, base, i));
      return out;
    }
    case MonadKind::exp: {
      if (n > 62 || ((1LL << n) - 1) > lim.max_carrier)
        throw guard_error("hyperspace carrier exceeds the size guard");
      for (long long mask = 1; mask < (1LL << n); ++mask) {
        std::vector<int> atoms;
        for (int i = 0; i < n; ++i)
          if (mask & (1LL << i)) atoms.push_back(i);
        out.push_back(make_subset(k, base, std::move(atoms)));
      }
      break;
    }
    case MonadKind::lambda:
    case MonadKind::incl: {
      if (n > lim.family_base_limit)
        throw guard_error("family carrier base exceeds the enumeration bound");
      std::vector<Mask> chosen;
      bool linked = (k == MonadKind::lambda);
      antichain_dfs(n, linked, chosen, 1, [&](const std::vector<Mask>& fam) {
        if (linked && !maximal_linked(n, fam)) return;
        std::vector<std::vector<int>> members;
        members.reserve(fam.size());
        for (Mask m : fam) members.push_back(from_mask(m));
        out.push_back(make_family(k, base, std::move(members)));
      });
      if (static_cast<long long>(out.size()) > lim.max_carrier)
        throw guard_error("family carrier exceeds the size guard");
      break;
    }
    case MonadKind::prob:
      throw capability_error("probability carrier is not enumerable");
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpacePtr materialize(MonadKind k, const SpacePtr& base, const Limits& lim) {
  return make_support_space(base, enumerate_elements(k, base, lim));
}

TElement sample_element(MonadKind k, const SpacePtr& base, Rng& rng) {
  int n = base->set.size();
  if (n == 0) throw shape_error("cannot sample over an empty base");
  std::vector<int> atoms;
  switch (k) {
    case MonadKind::id:
      return make_point(k, base, static_cast<int>(rng.below(n)));
    case MonadKind::exp: {
      int c = 1 + static_cast<int>(rng.below(std::min(n, 8)));
      pick_distinct(rng, n, c, atoms);
      return make_subset(k, base, std::move(atoms));
    }
    case MonadKind::lambda: {
      int s = std::min(n, 6);
      pick_distinct(rng, n, s, atoms);
      auto members = pair_selection(s, [&] { return rng.next() & 1; });
      for (auto& m : members)
        for (int& x : m) x = atoms[x];
      return make_family(k, base, std::move(members));
    }
    case MonadKind::incl: {
      int s = std::min(n, 6);
      pick_distinct(rng, n, s, atoms);
      int count = 1 + static_cast<int>(rng.below(3));
      std::vector<std::vector<int>> members;
      std::vector<int> mem;
      for (int i = 0; i < count; ++i) {
        int c = 1 + static_cast<int>(rng.below(s));
        pick_distinct(rng, s, c, mem);
        auto& back = members.emplace_back();
        back.reserve(mem.size());
        for (int x : mem) back.push_back(atoms[x]);
      }
      return make_family(k, base, std::move(members));
    }
    case MonadKind::prob: {
      int c = 1 + static_cast<int>(rng.below(std::min(n, 6)));
      pick_distinct(rng, n, c, atoms);
      std::vector<long long> raw(c);
      long long total = 0;
      for (auto& w : raw) {
        w = 1 + static_cast<long long>(rng.below(16));
        total += w;
      }
      std::vector<std::pair<int, Rat>> mass;
      for (int i = 0; i < c; ++i) mass.emplace_back(atoms[i], Rat(raw[i], total));
      return make_dist(base, std::move(mass));
    }
  }
  throw internal_error("bad monad kind");
}

std::vector<int> support_bruteforce(const TElement& e, const Limits& lim) {
  if (e.kind == MonadKind::prob) return used_atoms(e);
  int n = e.base->set.size();
  if (n > 20) throw guard_error("support search infeasible over this base");
  std::vector<Mask> subsets;
  for (Mask a = 1; a < (Mask(1) << n); ++a) subsets.push_back(a);
  std::stable_sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (Mask a : subsets) {
    auto atoms = from_mask(a);
    SpacePtr sub = make_subspace(e.base, atoms);
    FinMap incl = inclusion_map(sub, e.base);
    std::vector<TElement> candidates;
    try {
      candidates = enumerate_elements(e.kind, sub, lim);
    } catch (const guard_error&) {
      continue;
    }
    for (const auto& c : candidates)
      if (fmap(incl, c, e.base) == e) return atoms;
  }
  throw internal_error("element has no support");
}

TElement mult_via_upper_sets(const TElement& m) {
  check_decoded_space(m);
  if (m.kind != MonadKind::lambda && m.kind != MonadKind::incl)
    throw shape_error("upper-set multiplication is for family monads");
  const Space& space = *m.base;
  int n = space.inner->set.size();
  if (n > 16) throw guard_error("upper-set oracle infeasible over this base");
  const auto& members = family_of(m).members;  // index carrier atoms, kept as vectors
  std::vector<std::vector<int>> result;
  for (Mask a = 1; a < (Mask(1) << n); ++a) {
    std::vector<int> a_plus;
    for (int f = 0; f < space.set.size(); ++f) {
      for (const auto& mem : family_of(space.decoded[f]).members)
        if ((to_mask(mem) & ~a) == 0) { a_plus.push_back(f); break; }
    }
    bool contained = false;
    for (const auto& mem : members)
      if (std::includes(a_plus.begin(), a_plus.end(), mem.begin(), mem.end())) {
        contained = true;
        break;
      }
    if (contained) result.push_back(from_mask(a));
  }
  return make_family(m.kind, space.inner, std::move(result));
}

std::vector<TElement> enumerate_mls_pair_selection(const SpacePtr& base) {
  int n = base->set.size();
  if (n > 5) throw guard_error("pair-selection enumeration infeasible");
  Mask full = (Mask(1) << n) - 1;
  std::vector<Mask> pairs;  // representative of each complement pair
  for (Mask m = 1; m < full; ++m)
    if (m < (full & ~m)) pairs.push_back(m);
  std::vector<TElement> out;
  for (Mask choice = 0; choice < (Mask(1) << pairs.size()); ++choice) {
    std::vector<Mask> selected = {full};
    for (size_t i = 0; i < pairs.size(); ++i)
      selected.push_back((choice >> i) & 1 ? (full & ~pairs[i]) : pairs[i]);
    if (!pairwise_linked(selected)) continue;
    std::vector<std::vector<int>> members;
    for (Mask m : selected) members.push_back(from_mask(m));
    out.push_back(make_family(MonadKind::lambda, base, std::move(members)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mext
