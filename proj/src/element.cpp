#include "mext/element.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mext/errors.hpp"

namespace mext {

std::string kind_name(MonadKind k) {
  switch (k) {
    case MonadKind::id: return "id";
    case MonadKind::exp: return "exp";
    case MonadKind::lambda: return "lambda";
    case MonadKind::incl: return "incl";
    case MonadKind::prob: return "prob";
  }
  throw internal_error("bad monad kind");
}

MonadKind kind_from_name(std::string_view name) {
  if (name == "id") return MonadKind::id;
  if (name == "exp") return MonadKind::exp;
  if (name == "lambda") return MonadKind::lambda;
  if (name == "incl") return MonadKind::incl;
  if (name == "prob") return MonadKind::prob;
  throw config_error("unknown monad: " + std::string(name));
}

bool same_base(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->set == b->set;
}

bool TElement::operator==(const TElement& o) const {
  return kind == o.kind && same_base(base, o.base) && payload == o.payload;
}

bool TElement::operator<(const TElement& o) const {
  if (kind != o.kind) throw shape_error("ordering elements of different monads");
  if (!same_base(base, o.base)) throw shape_error("ordering elements over different bases");
  return payload < o.payload;
}

SpacePtr make_root_space(FinSet set) {
  auto s = std::make_shared<Space>();
  s->set = std::move(set);
  return s;
}

SpacePtr make_space(FinSet set, SpacePtr inner, std::vector<TElement> decoded) {
  if (decoded.size() != static_cast<size_t>(set.size()))
    throw shape_error("space decoding size mismatch");
  auto s = std::make_shared<Space>();
  s->set = std::move(set);
  s->inner = std::move(inner);
  s->decoded = std::move(decoded);
  return s;
}

SpacePtr make_support_space(SpacePtr inner, std::vector<TElement> decoded) {
  std::vector<std::string> labels;
  labels.reserve(decoded.size());
  for (const auto& e : decoded) {
    if (!same_base(e.base, inner)) throw shape_error("support element over a foreign base");
    labels.push_back(render(e));
  }
  return make_space(FinSet(std::move(labels)), std::move(inner), std::move(decoded));
}

SpacePtr make_subspace(const SpacePtr& s, const std::vector<int>& keep) {
  std::vector<std::string> labels;
  std::vector<TElement> decoded;
  labels.reserve(keep.size());
  for (int i : keep) {
    if (i < 0 || i >= s->set.size()) throw shape_error("subspace atom out of range");
    labels.push_back(s->set.label(i));
    if (!s->decoded.empty()) decoded.push_back(s->decoded[i]);
  }
  if (s->decoded.empty()) return make_root_space(FinSet(std::move(labels)));
  return make_space(FinSet(std::move(labels)), s->inner, std::move(decoded));
}

FinMap inclusion_map(const SpacePtr& sub, const SpacePtr& full) {
  std::vector<int> tab(sub->set.size());
  for (int i = 0; i < sub->set.size(); ++i) tab[i] = full->set.require(sub->set.label(i));
  return FinMap(sub->set, full->set, std::move(tab));
}

namespace {

void check_atom(const SpacePtr& base, int atom) {
  if (atom < 0 || atom >= base->set.size()) throw shape_error("atom index out of range");
}

Payload expected_shape_check(MonadKind k, const Payload& p) {
  bool ok = false;
  switch (k) {
    case MonadKind::id: ok = std::holds_alternative<Point>(p); break;
    case MonadKind::exp: ok = std::holds_alternative<Subset>(p); break;
    case MonadKind::lambda:
    case MonadKind::incl: ok = std::holds_alternative<Family>(p); break;
    case MonadKind::prob: ok = std::holds_alternative<Dist>(p); break;
  }
  if (!ok) throw shape_error("payload shape does not match monad " + kind_name(k));
  return p;
}

}  // namespace

TElement make_point(MonadKind k, SpacePtr base, int atom) {
  check_atom(base, atom);
  return TElement{k, std::move(base), expected_shape_check(k, Point{atom})};
}

TElement make_subset(MonadKind k, SpacePtr base, std::vector<int> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  if (atoms.empty()) throw shape_error("empty subset");
  for (int a : atoms) check_atom(base, a);
  return TElement{k, std::move(base), expected_shape_check(k, Subset{std::move(atoms)})};
}

std::vector<std::vector<int>> minimize_antichain(std::vector<std::vector<int>> members) {
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < members.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < members.size() && !dominated; ++j)
      if (j != i && std::includes(members[i].begin(), members[i].end(),
                                  members[j].begin(), members[j].end()))
        dominated = true;
    if (!dominated) out.push_back(members[i]);
  }
  return out;
}

TElement make_family(MonadKind k, SpacePtr base, std::vector<std::vector<int>> members) {
  for (const auto& m : members) {
    if (m.empty()) throw shape_error("empty family member");
    for (int a : m) check_atom(base, a);
  }
  auto mins = minimize_antichain(std::move(members));
  if (mins.empty()) throw shape_error("empty family");
  return TElement{k, std::move(base), expected_shape_check(k, Family{std::move(mins)})};
}

TElement make_dist(SpacePtr base, std::vector<std::pair<int, Rat>> mass) {
  std::sort(mass.begin(), mass.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, Rat>> out;
  for (const auto& [atom, w] : mass) {
    check_atom(base, atom);
    if (w == Rat(0)) continue;
    if (w < Rat(0)) throw shape_error("negative weight");
    if (!out.empty() && out.back().first == atom)
      out.back().second += w;
    else
      out.emplace_back(atom, w);
  }
  Rat total(0);
  for (const auto& [atom, w] : out) total += w;
  if (total != Rat(1)) throw shape_error("weights sum to " + render_rat(total) + ", not 1");
  return TElement{MonadKind::prob, std::move(base), Dist{std::move(out)}};
}

namespace {

std::string render_subset(const FinSet& base, const std::vector<int>& atoms) {
  std::string s = "{";
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ",";
    s += base.label(atoms[i]);
  }
  return s + "}";
}

}  // namespace

std::string render(const TElement& e) {
  const FinSet& base = e.base->set;
  if (const auto* p = std::get_if<Point>(&e.payload)) return base.label(p->atom);
  if (const auto* s = std::get_if<Subset>(&e.payload)) return render_subset(base, s->atoms);
  if (const auto* f = std::get_if<Family>(&e.payload)) {
    std::string out = "[";
    for (size_t i = 0; i < f->members.size(); ++i) {
      if (i) out += ",";
      out += render_subset(base, f->members[i]);
    }
    return out + "]";
  }
  const auto& d = std::get<Dist>(e.payload);
  std::string out = "{";
  for (size_t i = 0; i < d.mass.size(); ++i) {
    if (i) out += ", ";
    out += base.label(d.mass[i].first) + ":" + render_rat(d.mass[i].second);
  }
  return out + "}";
}

namespace {

// Split on sep at bracket depth 0. Tower atom labels contain nested
// brackets; user labels may not contain "(", ")" or ",".
std::vector<std::string_view> split_depth0(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '{' || c == '[' || c == '(') ++depth;
    else if (c == '}' || c == ']' || c == ')') --depth;
    else if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

std::string_view strip_brackets(std::string_view s, char open, char close,
                                const std::string& what) {
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw parse_error("malformed " + what + ": " + std::string(s));
  return s.substr(1, s.size() - 2);
}

std::vector<int> parse_subset(const FinSet& base, std::string_view s) {
  auto body = strip_brackets(s, '{', '}', "subset");
  std::vector<int> atoms;
  for (auto part : split_depth0(body, ',')) {
    int i = base.index_of(part);
    if (i < 0) throw parse_error("unknown atom in subset: " + std::string(part));
    atoms.push_back(i);
  }
  return atoms;
}

}  // namespace

TElement parse_element(MonadKind k, const SpacePtr& base, std::string_view text) {
  switch (k) {
    case MonadKind::id: {
      int i = base->set.index_of(text);
      if (i < 0) throw parse_error("unknown atom: " + std::string(text));
      return make_point(k, base, i);
    }
    case MonadKind::exp:
      return make_subset(k, base, parse_subset(base->set, text));
    case MonadKind::lambda:
    case MonadKind::incl: {
      auto body = strip_brackets(text, '[', ']', "family");
      if (body.empty()) throw parse_error("empty family");
      std::vector<std::vector<int>> members;
      for (auto part : split_depth0(body, ','))
        members.push_back(parse_subset(base->set, part));
      return make_family(k, base, std::move(members));
    }
    case MonadKind::prob: {
      auto body = strip_brackets(text, '{', '}', "distribution");
      std::vector<std::pair<int, Rat>> mass;
      bool first = true;
      for (auto part : split_depth0(body, ',')) {
        if (!first && !part.empty() && part.front() == ' ') part.remove_prefix(1);
        first = false;
        size_t colon = part.rfind(':');
        if (colon == std::string_view::npos)
          throw parse_error("distribution entry lacks a weight: " + std::string(part));
        auto label = part.substr(0, colon);
        int i = base->set.index_of(label);
        if (i < 0) throw parse_error("unknown atom in distribution: " + std::string(label));
        mass.emplace_back(i, parse_rat(std::string(part.substr(colon + 1))));
      }
      return make_dist(base, std::move(mass));
    }
  }
  throw internal_error("bad monad kind");
}

std::vector<int> used_atoms(const TElement& e) {
  std::set<int> atoms;
  if (const auto* p = std::get_if<Point>(&e.payload)) atoms.insert(p->atom);
  else if (const auto* s = std::get_if<Subset>(&e.payload)) atoms.insert(s->atoms.begin(), s->atoms.end());
  else if (const auto* f = std::get_if<Family>(&e.payload)) {
    for (const auto& m : f->members) atoms.insert(m.begin(), m.end());
  } else {
    for (const auto& [a, w] : std::get<Dist>(e.payload).mass) atoms.insert(a);
  }
  return std::vector<int>(atoms.begin(), atoms.end());
}

}  // namespace mext
