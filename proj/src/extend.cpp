#include "mext/extend.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mext/errors.hpp"

namespace mext {

std::function<TElement(const TElement&)> left_shift_ext(const BinOpTable& op, int x,
                                                        const SpacePtr& out_root) {
  if (x < 0 || x >= op.left.size()) throw shape_error("left shift point out of range");
  FinMap shift = op.left_shift(x);
  return [shift, out_root](const TElement& b) { return fmap(shift, b, out_root); };
}

TElement extend_direct(const BinOpTable& op, const TElement& a, const TElement& b,
                       const SpacePtr& out_root) {
  if (a.base->set != op.left || b.base->set != op.right)
    throw shape_error("extension arguments do not match the operation carriers");
  return bind(a, [&](int x) { return fmap(op.left_shift(x), b, out_root); });
}

TElement extend_via_tensor(const BinOpTable& op, const TElement& a, const TElement& b,
                           const SpacePtr& out_root) {
  if (a.base->set != op.left || b.base->set != op.right)
    throw shape_error("extension arguments do not match the operation carriers");
  return fmap(op.as_map(), tensor(a, b), out_root);
}

ExtendedOp extended_cayley_table(MonadKind k, const BinOpTable& op, const Limits& lim,
                                 bool allow_nonassociative) {
  if (!op.endomorphic()) throw shape_error("extended table needs X = Y = Z");
  if (!allow_nonassociative && !is_associative(op))
    throw config_error("operation is not associative (override to extend anyway)");
  SpacePtr root = make_root_space(op.left);
  SpacePtr carrier = materialize(k, root, lim);
  int n = carrier->set.size();
  ExtendedOp ext{k, op, carrier, std::vector<int>(static_cast<size_t>(n) * n, -1)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      TElement d = extend_direct(op, carrier->decoded[i], carrier->decoded[j], root);
      TElement t = extend_via_tensor(op, carrier->decoded[i], carrier->decoded[j], root);
      if (d != t)
        throw internal_error("extension constructions disagree at (" +
                             carrier->set.label(i) + ", " + carrier->set.label(j) +
                             "): " + render(d) + " vs " + render(t));
      int cell = carrier->set.index_of(render(d));
      if (cell < 0) throw internal_error("extension left the carrier: " + render(d));
      ext.cells[static_cast<size_t>(i) * n + j] = cell;
    }
  return ext;
}

TElement oracle_setwise(const BinOpTable& op, const TElement& a, const TElement& b,
                        const SpacePtr& out_root) {
  const auto& sa = std::get<Subset>(a.payload).atoms;
  const auto& sb = std::get<Subset>(b.payload).atoms;
  std::vector<int> atoms;
  for (int x : sa)
    for (int y : sb) atoms.push_back(op.at(x, y));
  return make_subset(MonadKind::exp, out_root, std::move(atoms));
}

TElement oracle_convolution(const BinOpTable& op, const TElement& a, const TElement& b,
                            const SpacePtr& out_root) {
  std::map<int, Rat> acc;
  for (const auto& [x, wx] : std::get<Dist>(a.payload).mass)
    for (const auto& [y, wy] : std::get<Dist>(b.payload).mass)
      acc[op.at(x, y)] += wx * wy;
  return make_dist(out_root, {acc.begin(), acc.end()});
}

TElement extend_direct_upper(const BinOpTable& op, const TElement& a, const TElement& b,
                             const SpacePtr& out_root, const Limits& lim) {
  if (a.kind != MonadKind::lambda && a.kind != MonadKind::incl)
    throw shape_error("upper-set extension oracle is for family monads");
  TElement lifted = fmap_elem(a, [&](int x) { return fmap(op.left_shift(x), b, out_root); });
  SpacePtr full = materialize(a.kind, out_root, lim);
  TElement embedded = fmap(inclusion_map(lifted.base, full), lifted, full);
  return mult_via_upper_sets(embedded);
}

namespace {

constexpr uint64_t stream(int tag, long long i) {
  return (static_cast<uint64_t>(tag) << 40) | static_cast<uint64_t>(i);
}

}  // namespace

std::vector<LawReport> check_extension_axioms(MonadKind k, const BinOpTable& op,
                                              const LawOptions& opt) {
  SpacePtr rx = make_root_space(op.left);
  SpacePtr ry = make_root_space(op.right);
  SpacePtr rz = make_root_space(op.out);
  std::vector<LawReport> out;

  int ny = op.right.size();
  out.push_back(run_law(
      "extension-unit", static_cast<long long>(op.left.size()) * ny, Mode::exhaustive, false,
      [&](long long i) -> LawInstance {
        int x = static_cast<int>(i) / ny, y = static_cast<int>(i) % ny;
        TElement lhs = extend_direct(op, unit(k, rx, x), unit(k, ry, y), rz);
        TElement rhs = unit(k, rz, op.at(x, y));
        return {{op.left.label(x), op.right.label(y)}, render(lhs), render(rhs), lhs == rhs};
      },
      opt.exec));

  // Right shifts: mu_Z(T Phi^b (m)) = Phi^b(mu_X(m)) over pairs (b, m).
  auto right_instance = [&](const TElement& b, const TElement& m) -> LawInstance {
    TElement lhs = extend_direct(op, mult(m), b, rz);
    TElement rhs =
        mult(fmap_elem(m, [&](int i) { return extend_direct(op, m.base->decoded[i], b, rz); }));
    return {{render(b), render(m)}, render(lhs), render(rhs), lhs == rhs};
  };
  // Left shifts at units: mu_Z(T Phi_{unit(x)} (m)) = Phi_{unit(x)}(mu_Y(m)).
  auto left_instance = [&](int x, const TElement& m) -> LawInstance {
    TElement ux = unit(k, rx, x);
    TElement lhs = extend_direct(op, ux, mult(m), rz);
    TElement rhs =
        mult(fmap_elem(m, [&](int j) { return extend_direct(op, ux, m.base->decoded[j], rz); }));
    return {{op.left.label(x), render(m)}, render(lhs), render(rhs), lhs == rhs};
  };

  bool exhausted = false;
  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> ty = enumerate_elements(k, ry, opt.limits);
      SpacePtr tx = materialize(k, rx, opt.limits);
      std::vector<TElement> t2x = enumerate_elements(k, tx, opt.limits);
      out.push_back(run_law(
          "right-shift-morphism", static_cast<long long>(ty.size()) * t2x.size(),
          Mode::exhaustive, false,
          [&](long long i) { return right_instance(ty[i / t2x.size()], t2x[i % t2x.size()]); },
          opt.exec));
      SpacePtr tyspace = materialize(k, ry, opt.limits);
      std::vector<TElement> t2y = enumerate_elements(k, tyspace, opt.limits);
      out.push_back(run_law(
          "left-shift-morphism", static_cast<long long>(op.left.size()) * t2y.size(),
          Mode::exhaustive, false,
          [&](long long i) { return left_instance(static_cast<int>(i / t2y.size()), t2y[i % t2y.size()]); },
          opt.exec));
      exhausted = true;
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  if (!exhausted) {
    bool fallback = opt.mode == Mode::exhaustive;
    std::vector<SpacePtr> tower_x = materialize_tower(k, rx, 1, opt.limits);
    std::vector<SpacePtr> tower_y = materialize_tower(k, ry, 1, opt.limits);
    out.push_back(run_law(
        "right-shift-morphism", opt.samples, Mode::sampled, fallback,
        [&](long long i) {
          Rng rng = instance_rng(opt.seed, stream(7, i));
          TElement b = sample_element(k, ry, rng);
          TElement m = sample_tower(k, tower_x, 2, rng);
          return right_instance(b, m);
        },
        opt.exec));
    out.push_back(run_law(
        "left-shift-morphism", opt.samples, Mode::sampled, fallback,
        [&](long long i) {
          Rng rng = instance_rng(opt.seed, stream(8, i));
          int x = static_cast<int>(rng.below(op.left.size()));
          TElement m = sample_tower(k, tower_y, 2, rng);
          return left_instance(x, m);
        },
        opt.exec));
  }
  return out;
}

LawReport check_extension_associativity(MonadKind k, const BinOpTable& op,
                                        const LawOptions& opt) {
  if (!op.endomorphic()) throw shape_error("extension associativity needs X = Y = Z");
  SpacePtr root = make_root_space(op.left);

  auto instance = [&](const TElement& a, const TElement& b, const TElement& c) -> LawInstance {
    TElement lhs = extend_direct(op, extend_direct(op, a, b, root), c, root);
    TElement rhs = extend_direct(op, a, extend_direct(op, b, c, root), root);
    return {{render(a), render(b), render(c)}, render(lhs), render(rhs), lhs == rhs};
  };

  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> tx = enumerate_elements(k, root, opt.limits);
      long long n = static_cast<long long>(tx.size());
      return run_law(
          "extension-assoc", n * n * n, Mode::exhaustive, false,
          [&](long long i) {
            long long rem = i;
            int ci = static_cast<int>(rem % tx.size());
            rem /= tx.size();
            int bi = static_cast<int>(rem % tx.size());
            int ai = static_cast<int>(rem / tx.size());
            return instance(tx[ai], tx[bi], tx[ci]);
          },
          opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "extension-assoc", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, stream(9, i));
        TElement a = sample_element(k, root, rng);
        TElement b = sample_element(k, root, rng);
        TElement c = sample_element(k, root, rng);
        return instance(a, b, c);
      },
      opt.exec);
}

std::optional<std::pair<int, int>> homomorphism_premise_violation(
    const BinOpTable& phi, const BinOpTable& psi, const FinMap& hx, const FinMap& hy,
    const FinMap& hz) {
  if (hx.domain != phi.left || hy.domain != phi.right || hz.domain != phi.out ||
      hx.codomain != psi.left || hy.codomain != psi.right || hz.codomain != psi.out)
    throw shape_error("homomorphism maps do not line up with the operations");
  for (int x = 0; x < phi.left.size(); ++x)
    for (int y = 0; y < phi.right.size(); ++y)
      if (psi.at(hx.apply(x), hy.apply(y)) != hz.apply(phi.at(x, y)))
        return std::make_pair(x, y);
  return std::nullopt;
}

LawReport check_homomorphism(MonadKind k, const BinOpTable& phi, const BinOpTable& psi,
                             const FinMap& hx, const FinMap& hy, const FinMap& hz,
                             const LawOptions& opt) {
  if (auto bad = homomorphism_premise_violation(phi, psi, hx, hy, hz))
    throw config_error("homomorphism premise fails at (" + phi.left.label(bad->first) +
                       ", " + phi.right.label(bad->second) + ")");
  SpacePtr rx = make_root_space(phi.left), ry = make_root_space(phi.right);
  SpacePtr rz = make_root_space(phi.out);
  SpacePtr rx2 = make_root_space(psi.left), ry2 = make_root_space(psi.right);
  SpacePtr rz2 = make_root_space(psi.out);

  auto instance = [&](const TElement& a, const TElement& b) -> LawInstance {
    TElement lhs = extend_direct(psi, fmap(hx, a, rx2), fmap(hy, b, ry2), rz2);
    TElement rhs = fmap(hz, extend_direct(phi, a, b, rz), rz2);
    return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
  };

  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> ta = enumerate_elements(k, rx, opt.limits);
      std::vector<TElement> tb = enumerate_elements(k, ry, opt.limits);
      return run_law(
          "homomorphism", static_cast<long long>(ta.size()) * tb.size(), Mode::exhaustive,
          false, [&](long long i) { return instance(ta[i / tb.size()], tb[i % tb.size()]); },
          opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "homomorphism", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, stream(10, i));
        TElement a = sample_element(k, rx, rng);
        TElement b = sample_element(k, ry, rng);
        return instance(a, b);
      },
      opt.exec);
}

namespace {

std::vector<int> semigroup_closure(const BinOpTable& op, std::vector<int> seed_atoms) {
  std::set<int> closure(seed_atoms.begin(), seed_atoms.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(closure.begin(), closure.end());
    for (int x : cur)
      for (int y : cur)
        if (closure.insert(op.at(x, y)).second) grew = true;
  }
  return {closure.begin(), closure.end()};
}

// Rebuild the payload with atoms renamed into the subspace and check it is
// still a valid element there.
bool restricts_validly(const TElement& e, const SpacePtr& sub, const std::vector<int>& atoms) {
  std::vector<int> pos(e.base->set.size(), -1);
  for (size_t i = 0; i < atoms.size(); ++i) pos[atoms[i]] = static_cast<int>(i);
  auto renamed = [&](int a) { return pos[a]; };
  TElement r;
  if (const auto* p = std::get_if<Point>(&e.payload)) {
    r = make_point(e.kind, sub, renamed(p->atom));
  } else if (const auto* s = std::get_if<Subset>(&e.payload)) {
    std::vector<int> v;
    for (int a : s->atoms) v.push_back(renamed(a));
    r = make_subset(e.kind, sub, std::move(v));
  } else if (const auto* f = std::get_if<Family>(&e.payload)) {
    std::vector<std::vector<int>> ms;
    for (const auto& m : f->members) {
      std::vector<int> v;
      for (int a : m) v.push_back(renamed(a));
      ms.push_back(std::move(v));
    }
    r = make_family(e.kind, sub, std::move(ms));
  } else {
    std::vector<std::pair<int, Rat>> mass;
    for (const auto& [a, w] : std::get<Dist>(e.payload).mass) mass.emplace_back(renamed(a), w);
    r = make_dist(sub, std::move(mass));
  }
  return valid_element(r);
}

}  // namespace

LawReport closure_check(MonadKind k, const BinOpTable& op, const LawOptions& opt) {
  if (!op.endomorphic()) throw shape_error("closure check needs X = Y = Z");
  SpacePtr root = make_root_space(op.left);

  auto instance = [&](const TElement& a, const TElement& b) -> LawInstance {
    TElement e = extend_direct(op, a, b, root);
    std::vector<int> u = used_atoms(a);
    std::vector<int> ub = used_atoms(b);
    u.insert(u.end(), ub.begin(), ub.end());
    std::vector<int> closure = semigroup_closure(op, std::move(u));
    std::vector<int> eu = used_atoms(e);
    bool inside = std::includes(closure.begin(), closure.end(), eu.begin(), eu.end());
    bool ok = inside && restricts_validly(e, make_subspace(root, closure), closure);
    std::string closure_render = "{";
    for (size_t i = 0; i < closure.size(); ++i)
      closure_render += (i ? "," : "") + op.left.label(closure[i]);
    closure_render += "}";
    return {{render(a), render(b)}, render(e), closure_render, ok};
  };

  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> tx = enumerate_elements(k, root, opt.limits);
      return run_law(
          "support-closure", static_cast<long long>(tx.size()) * tx.size(), Mode::exhaustive,
          false, [&](long long i) { return instance(tx[i / tx.size()], tx[i % tx.size()]); },
          opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "support-closure", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, stream(11, i));
        TElement a = sample_element(k, root, rng);
        TElement b = sample_element(k, root, rng);
        return instance(a, b);
      },
      opt.exec);
}

std::vector<TElement> idempotents(const ExtendedOp& ext) {
  std::vector<TElement> out;
  int n = ext.carrier->set.size();
  for (int i = 0; i < n; ++i)
    if (ext.at(i, i) == i) out.push_back(ext.carrier->decoded[i]);
  return out;
}

}  // namespace mext
