#include "mext/monad.hpp"

#include "mext/errors.hpp"

namespace mext {

std::vector<SpacePtr> materialize_tower(MonadKind k, const SpacePtr& root, int levels,
                                        const Limits& lim) {
  std::vector<SpacePtr> tower = {root};
  for (int i = 0; i < levels; ++i) {
    try {
      tower.push_back(materialize(k, tower.back(), lim));
    } catch (const guard_error&) {
      break;
    } catch (const capability_error&) {
      break;
    }
  }
  return tower;
}

namespace {

SpacePtr sample_base(MonadKind k, const std::vector<SpacePtr>& tower, int level, Rng& rng) {
  if (static_cast<int>(tower.size()) > level - 1) return tower[level - 1];
  SpacePtr below = sample_base(k, tower, level - 1, rng);
  std::vector<TElement> picks;
  for (int attempt = 0; attempt < 12 && picks.size() < 3; ++attempt) {
    TElement e = sample_element(k, below, rng);
    bool fresh = true;
    for (const auto& p : picks)
      if (p == e) { fresh = false; break; }
    if (fresh) picks.push_back(std::move(e));
  }
  return make_support_space(below, std::move(picks));
}

}  // namespace

TElement sample_tower(MonadKind k, const std::vector<SpacePtr>& tower, int level, Rng& rng) {
  if (level < 1 || tower.empty()) throw shape_error("sample_tower: bad level");
  return sample_element(k, sample_base(k, tower, level, rng), rng);
}

LawReport run_law(const std::string& name, long long n, Mode mode_used, bool fallback,
                  const std::function<LawInstance(long long)>& eval, Exec exec) {
  SweepOutcome oc = sweep(n, [&](long long i) { return eval(i).ok; }, exec);
  LawReport r;
  r.law = name;
  r.pass = oc.pass;
  r.instances = oc.instances;
  r.mode_used = mode_used;
  r.sampled_fallback = fallback;
  if (!oc.pass) {
    LawInstance inst = eval(oc.fail_index);
    r.cx = Counterexample{inst.inputs, inst.lhs, inst.rhs};
  }
  return r;
}

namespace {

LawInstance unit_left_instance(MonadKind k, const TElement& m) {
  SpacePtr ss = make_support_space(m.base, {m});
  TElement lhs = mult(unit(k, ss, 0));
  return {{render(m)}, render(lhs), render(m), lhs == m};
}

LawInstance unit_right_instance(MonadKind k, const TElement& m) {
  TElement lifted = fmap_elem(m, [&](int j) { return unit(k, m.base, j); });
  TElement lhs = mult(lifted);
  return {{render(m)}, render(lhs), render(m), lhs == m};
}

LawInstance assoc_instance(const TElement& big) {
  TElement lhs = mult(mult(big));
  TElement rhs = mult(fmap_elem(big, [&](int i) { return mult(big.base->decoded[i]); }));
  return {{render(big)}, render(lhs), render(rhs), lhs == rhs};
}

constexpr uint64_t law_stream(int law_index, long long i) {
  return (static_cast<uint64_t>(law_index) << 40) | static_cast<uint64_t>(i);
}

}  // namespace

std::vector<LawReport> check_monad_laws(MonadKind k, const FinSet& x, const LawOptions& opt) {
  SpacePtr root = make_root_space(x);
  std::vector<SpacePtr> tower = materialize_tower(k, root, 2, opt.limits);
  std::vector<LawReport> out;

  const bool want_exhaustive = opt.mode == Mode::exhaustive;
  const std::vector<TElement>* t2 =
      tower.size() >= 3 ? &tower[2]->decoded : nullptr;

  auto sampled_unit = [&](const std::string& name, int law_index, bool fallback, auto instance) {
    out.push_back(run_law(
        name, opt.samples, Mode::sampled, fallback,
        [&, law_index](long long i) {
          Rng rng = instance_rng(opt.seed, law_stream(law_index, i));
          TElement m = sample_tower(k, tower, 2, rng);
          return instance(k, m);
        },
        opt.exec));
  };

  if (want_exhaustive && t2) {
    out.push_back(run_law(
        "unit-left", static_cast<long long>(t2->size()), Mode::exhaustive, false,
        [&](long long i) { return unit_left_instance(k, (*t2)[i]); }, opt.exec));
    out.push_back(run_law(
        "unit-right", static_cast<long long>(t2->size()), Mode::exhaustive, false,
        [&](long long i) { return unit_right_instance(k, (*t2)[i]); }, opt.exec));
  } else {
    sampled_unit("unit-left", 0, want_exhaustive,
                 [](MonadKind kk, const TElement& m) { return unit_left_instance(kk, m); });
    sampled_unit("unit-right", 1, want_exhaustive,
                 [](MonadKind kk, const TElement& m) { return unit_right_instance(kk, m); });
  }

  std::vector<TElement> t3;
  bool have_t3 = false;
  if (want_exhaustive && tower.size() >= 3) {
    try {
      t3 = enumerate_elements(k, tower[2], opt.limits);
      have_t3 = true;
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  if (have_t3) {
    out.push_back(run_law(
        "mult-assoc", static_cast<long long>(t3.size()), Mode::exhaustive, false,
        [&](long long i) { return assoc_instance(t3[i]); }, opt.exec));
  } else {
    out.push_back(run_law(
        "mult-assoc", opt.samples, Mode::sampled, want_exhaustive,
        [&](long long i) {
          Rng rng = instance_rng(opt.seed, law_stream(2, i));
          return assoc_instance(sample_tower(k, tower, 3, rng));
        },
        opt.exec));
  }
  return out;
}

LawReport check_algebra_morphism(MonadKind k, const SpacePtr& tx,
                                 const std::function<TElement(const TElement&)>& h,
                                 const LawOptions& opt) {
  if (tx->decoded.empty())
    throw capability_error("algebra-morphism check needs a materialized carrier");
  auto instance = [&](const TElement& m) -> LawInstance {
    TElement lhs = h(mult(m));
    TElement rhs = mult(fmap_elem(m, [&](int i) { return h(tx->decoded[i]); }));
    return {{render(m)}, render(lhs), render(rhs), lhs == rhs};
  };

  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> t2 = enumerate_elements(k, tx, opt.limits);
      return run_law(
          "algebra-morphism", static_cast<long long>(t2.size()), Mode::exhaustive, false,
          [&](long long i) { return instance(t2[i]); }, opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "algebra-morphism", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, law_stream(3, i));
        return instance(sample_element(k, tx, rng));
      },
      opt.exec);
}

LawReport check_free_determination(MonadKind k, const SpacePtr& tx,
                                   const std::function<TElement(const TElement&)>& h,
                                   const LawOptions& opt) {
  LawReport pre = check_algebra_morphism(k, tx, h, opt);
  if (!pre.pass) {
    LawReport r = pre;
    r.law = "free-determination";
    if (r.cx) r.cx->inputs.insert(r.cx->inputs.begin(), "precondition violated: not an algebra morphism");
    return r;
  }
  const SpacePtr& root = tx->inner;
  auto instance = [&](const TElement& a) -> LawInstance {
    TElement lhs = h(a);
    TElement rhs = mult(fmap_elem(a, [&](int x) { return h(unit(k, root, x)); }));
    return {{render(a)}, render(lhs), render(rhs), lhs == rhs};
  };
  if (opt.mode == Mode::exhaustive) {
    return run_law(
        "free-determination", static_cast<long long>(tx->decoded.size()), Mode::exhaustive,
        false, [&](long long i) { return instance(tx->decoded[i]); }, opt.exec);
  }
  return run_law(
      "free-determination", opt.samples, Mode::sampled, false,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, law_stream(4, i));
        return instance(sample_element(k, root, rng));
      },
      opt.exec);
}

}  // namespace mext
