#include "mext/tensor.hpp"

#include "mext/errors.hpp"

namespace mext {

SpacePtr pair_space(const SpacePtr& x, const SpacePtr& y) {
  return make_root_space(product(x->set, y->set));
}

TElement tensor(const TElement& a, const TElement& b) {
  if (a.kind != b.kind) throw shape_error("tensor of elements from different monads");
  SpacePtr xy = pair_space(a.base, b.base);
  int ny = b.base->set.size();
  return bind(a, [&](int x) {
    std::vector<int> tab(ny);
    for (int j = 0; j < ny; ++j) tab[j] = x * ny + j;
    FinMap ix(b.base->set, xy->set, std::move(tab));
    return fmap(ix, b, xy);
  });
}

TElement oracle_tensor_exp(const TElement& a, const TElement& b) {
  SpacePtr xy = pair_space(a.base, b.base);
  int ny = b.base->set.size();
  const auto& sa = std::get<Subset>(a.payload).atoms;
  const auto& sb = std::get<Subset>(b.payload).atoms;
  std::vector<int> atoms;
  atoms.reserve(sa.size() * sb.size());
  for (int x : sa)
    for (int y : sb) atoms.push_back(x * ny + y);
  return make_subset(MonadKind::exp, xy, std::move(atoms));
}

TElement oracle_tensor_prob(const TElement& a, const TElement& b) {
  SpacePtr xy = pair_space(a.base, b.base);
  int ny = b.base->set.size();
  std::vector<std::pair<int, Rat>> mass;
  for (const auto& [x, wx] : std::get<Dist>(a.payload).mass)
    for (const auto& [y, wy] : std::get<Dist>(b.payload).mass)
      mass.emplace_back(x * ny + y, wx * wy);
  return make_dist(xy, std::move(mass));
}

LawReport check_tensor_unit(MonadKind k, const FinSet& x, const FinSet& y,
                            const LawOptions& opt) {
  SpacePtr rx = make_root_space(x), ry = make_root_space(y);
  SpacePtr xy = pair_space(rx, ry);
  long long n = static_cast<long long>(x.size()) * y.size();
  return run_law(
      "tensor-unit", n, Mode::exhaustive, false,
      [&](long long i) -> LawInstance {
        int xi = static_cast<int>(i) / y.size(), yi = static_cast<int>(i) % y.size();
        TElement lhs = tensor(unit(k, rx, xi), unit(k, ry, yi));
        TElement rhs = unit(k, xy, xi * y.size() + yi);
        return {{x.label(xi), y.label(yi)}, render(lhs), render(rhs), lhs == rhs};
      },
      opt.exec);
}

LawReport check_tensor_naturality(MonadKind k, const FinMap& hx, const FinMap& hy,
                                  const LawOptions& opt) {
  SpacePtr rx = make_root_space(hx.domain), ry = make_root_space(hy.domain);
  SpacePtr rx2 = make_root_space(hx.codomain), ry2 = make_root_space(hy.codomain);
  SpacePtr xy2 = pair_space(rx2, ry2);
  FinMap hxy = product_map(hx, hy);

  auto instance = [&](const TElement& a, const TElement& b) -> LawInstance {
    TElement lhs = fmap(hxy, tensor(a, b), xy2);
    TElement rhs = tensor(fmap(hx, a, rx2), fmap(hy, b, ry2));
    return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
  };

  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> ta = enumerate_elements(k, rx, opt.limits);
      std::vector<TElement> tb = enumerate_elements(k, ry, opt.limits);
      long long n = static_cast<long long>(ta.size()) * tb.size();
      return run_law(
          "tensor-naturality", n, Mode::exhaustive, false,
          [&](long long i) { return instance(ta[i / tb.size()], tb[i % tb.size()]); },
          opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "tensor-naturality", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, (uint64_t(5) << 40) | uint64_t(i));
        TElement a = sample_element(k, rx, rng);
        TElement b = sample_element(k, ry, rng);
        return instance(a, b);
      },
      opt.exec);
}

LawReport check_tensor_associativity(MonadKind k, const FinSet& x, const FinSet& y,
                                     const FinSet& z, const LawOptions& opt) {
  SpacePtr rx = make_root_space(x), ry = make_root_space(y), rz = make_root_space(z);
  FinMap regroup = regroup_left(x, y, z);
  SpacePtr left_space = make_root_space(regroup.codomain);

  auto instance = [&](const TElement& a, const TElement& b, const TElement& c) -> LawInstance {
    TElement lhs = tensor(tensor(a, b), c);
    TElement rhs = fmap(regroup, tensor(a, tensor(b, c)), left_space);
    return {{render(a), render(b), render(c)}, render(lhs), render(rhs), lhs == rhs};
  };

  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> ta = enumerate_elements(k, rx, opt.limits);
      std::vector<TElement> tb = enumerate_elements(k, ry, opt.limits);
      std::vector<TElement> tc = enumerate_elements(k, rz, opt.limits);
      long long n = static_cast<long long>(ta.size()) * tb.size() * tc.size();
      return run_law(
          "tensor-assoc", n, Mode::exhaustive, false,
          [&](long long i) {
            long long rem = i;
            int ci = static_cast<int>(rem % tc.size());
            rem /= tc.size();
            int bi = static_cast<int>(rem % tb.size());
            int ai = static_cast<int>(rem / tb.size());
            return instance(ta[ai], tb[bi], tc[ci]);
          },
          opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "tensor-assoc", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, (uint64_t(6) << 40) | uint64_t(i));
        TElement a = sample_element(k, rx, rng);
        TElement b = sample_element(k, ry, rng);
        TElement c = sample_element(k, rz, rng);
        return instance(a, b, c);
      },
      opt.exec);
}

}  // namespace mext
