// End-to-end acceptance gate: one PASS/FAIL line per criterion, exit 1 on any
// failure. Everything is exact arithmetic; sampled sweeps use seed 42.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mext/job.hpp"

using namespace mext;

namespace {

LawOptions opts(Mode mode, long long samples = 10000) {
  LawOptions o;
  o.mode = mode;
  o.seed = 42;
  o.samples = samples;
  return o;
}

const LawReport* find_law(const std::vector<LawReport>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.law == name) return &r;
  return nullptr;
}

bool note_fail(std::string& note, const std::string& msg) {
  if (note.empty()) note = msg;
  return false;
}

BinOpTable random_op(int n, Rng& rng) {
  FinSet s = FinSet::canonical(n);
  std::vector<int> cells(static_cast<size_t>(n) * n);
  for (auto& c : cells) c = static_cast<int>(rng.below(n));
  return BinOpTable(s, s, s, cells);
}

// unit laws must be exhaustive; associativity may fall back to a labeled
// sampled sweep when T^3 is out of enumeration range
bool laws_pass(MonadKind k, int n, Mode mode, bool require_assoc_exhaustive,
               std::string& note) {
  auto rs = check_monad_laws(k, FinSet::canonical(n), opts(mode));
  std::string where = kind_name(k) + "@" + std::to_string(n);
  if (!all_pass(rs)) return note_fail(note, where + ": a law failed");
  if (mode == Mode::exhaustive) {
    for (const auto& name : {"unit-left", "unit-right"}) {
      const LawReport* r = find_law(rs, name);
      if (!r || r->mode_used != Mode::exhaustive)
        return note_fail(note, where + ": unit laws were not exhaustive");
    }
    const LawReport* a = find_law(rs, "mult-assoc");
    if (!a) return note_fail(note, where + ": no associativity report");
    if (require_assoc_exhaustive && a->mode_used != Mode::exhaustive)
      return note_fail(note, where + ": associativity was not exhaustive");
    if (a->mode_used == Mode::sampled && !a->sampled_fallback)
      return note_fail(note, where + ": sampled sweep lost its fallback label");
  } else {
    for (const auto& r : rs)
      if (r.instances < 10000) return note_fail(note, where + ": under 10^4 instances");
  }
  return true;
}

bool criterion1(std::string& note) {
  bool ok = true;
  for (int n = 1; n <= 4; ++n) ok = ok && laws_pass(MonadKind::id, n, Mode::exhaustive, true, note);
  for (int n = 1; n <= 2; ++n) {
    ok = ok && laws_pass(MonadKind::exp, n, Mode::exhaustive, true, note);
    ok = ok && laws_pass(MonadKind::lambda, n, Mode::exhaustive, true, note);
    ok = ok && laws_pass(MonadKind::incl, n, Mode::exhaustive, false, note);
  }
  if (ok) {
    auto rs = check_monad_laws(MonadKind::exp, FinSet::canonical(2), opts(Mode::exhaustive));
    const LawReport* a = find_law(rs, "mult-assoc");
    if (!a || a->instances != 127) ok = note_fail(note, "exp@2: |T^3 X| != 127");
  }
  for (auto k : {MonadKind::exp, MonadKind::lambda, MonadKind::incl})
    ok = ok && laws_pass(k, 3, Mode::sampled, false, note);
  for (int n = 1; n <= 4; ++n) ok = ok && laws_pass(MonadKind::prob, n, Mode::sampled, false, note);
  return ok;
}

bool criterion2(std::string& note) {
  Limits lim;
  std::vector<BinOpTable> ops;
  for (int n = 1; n <= 3; ++n)
    for (const auto& op : enumerate_binary_ops_vec(n, true)) ops.push_back(op);
  if (ops.size() != 1 + 8 + 113) return note_fail(note, "unexpected associative op census");
  for (const auto& op : ops) {
    for (auto k : {MonadKind::id, MonadKind::exp, MonadKind::lambda, MonadKind::incl}) {
      try {
        extended_cayley_table(k, op, lim);  // every cell checked both ways inside
      } catch (const internal_error& e) {
        return note_fail(note, std::string("constructions disagree: ") + e.what());
      }
    }
  }
  Rng pick = instance_rng(42, 1001);
  for (int t = 0; t < 10; ++t) {
    const BinOpTable& op = ops[pick.below(ops.size())];
    SpacePtr root = make_root_space(op.left);
    Rng rng = instance_rng(42, 1002 + t);
    for (int i = 0; i < 1000; ++i) {
      TElement a = sample_element(MonadKind::prob, root, rng);
      TElement b = sample_element(MonadKind::prob, root, rng);
      if (extend_direct(op, a, b, root) != extend_via_tensor(op, a, b, root))
        return note_fail(note, "prob constructions disagree");
    }
  }
  return true;
}

bool criterion3(std::string& note) {
  for (int n = 1; n <= 2; ++n) {
    for (const auto& op : enumerate_binary_ops_vec(n, false)) {
      for (auto k : {MonadKind::exp, MonadKind::lambda}) {
        auto rs = check_extension_axioms(k, op, opts(Mode::exhaustive));
        if (!all_pass(rs)) return note_fail(note, "axiom failed at size " + std::to_string(n));
        for (const auto& r : rs)
          if (r.mode_used != Mode::exhaustive)
            return note_fail(note, "axiom sweep was not exhaustive at size " + std::to_string(n));
      }
    }
  }
  Rng rng = instance_rng(42, 2001);
  for (int t = 0; t < 24; ++t) {
    BinOpTable op = random_op(3, rng);
    for (auto k : {MonadKind::exp, MonadKind::lambda})
      if (!all_pass(check_extension_axioms(k, op, opts(Mode::exhaustive))))
        return note_fail(note, "axiom failed on a sampled size-3 op");
  }
  return true;
}

bool criterion4(std::string& note) {
  for (const auto& op : enumerate_binary_ops_vec(2, true)) {
    for (auto k : {MonadKind::exp, MonadKind::lambda}) {
      auto r = check_extension_associativity(k, op, opts(Mode::exhaustive));
      if (!r.pass || r.mode_used != Mode::exhaustive)
        return note_fail(note, "transfer failed at size 2");
    }
  }
  for (const auto& op : enumerate_binary_ops_vec(3, true)) {
    auto re = check_extension_associativity(MonadKind::exp, op, opts(Mode::exhaustive));
    auto rl = check_extension_associativity(MonadKind::lambda, op, opts(Mode::exhaustive));
    if (!re.pass || re.instances != 343) return note_fail(note, "exp transfer at size 3");
    if (!rl.pass || rl.instances != 64) return note_fail(note, "lambda transfer at size 3");
  }
  BinOpTable bad(FinSet::canonical(2), FinSet::canonical(2), FinSet::canonical(2),
                 {0, 0, 1, 0});
  if (is_associative(bad)) return note_fail(note, "pinned table is associative");
  auto r = check_extension_associativity(MonadKind::exp, bad, opts(Mode::exhaustive));
  if (r.pass || !r.cx) return note_fail(note, "no witness for the non-associative table");
  if (r.cx->inputs != std::vector<std::string>{"{0,1}", "{0}", "{1}"} ||
      r.cx->lhs != "{0}" || r.cx->rhs != "{0,1}")
    return note_fail(note, "witness drifted from the pinned one");
  return true;
}

bool criterion5(std::string& note) {
  Limits lim;
  for (int n = 1; n <= 3; ++n) {
    SpacePtr root = make_root_space(FinSet::canonical(n));
    auto subsets = enumerate_elements(MonadKind::exp, root, lim);
    std::vector<BinOpTable> all;
    enumerate_binary_ops(n, false, [&](const BinOpTable& op) { all.push_back(op); });
    for (const auto& op : all)
      for (const auto& a : subsets)
        for (const auto& b : subsets)
          if (extend_direct(op, a, b, root) != oracle_setwise(op, a, b, root))
            return note_fail(note, "setwise oracle disagrees at size " + std::to_string(n));
  }
  Rng pick = instance_rng(42, 3001);
  for (int t = 0; t < 10; ++t) {
    int n = 2 + static_cast<int>(pick.below(2));
    BinOpTable op = random_op(n, pick);
    SpacePtr root = make_root_space(op.left);
    Rng rng = instance_rng(42, 3100 + t);
    for (int i = 0; i < 1000; ++i) {
      TElement a = sample_element(MonadKind::prob, root, rng);
      TElement b = sample_element(MonadKind::prob, root, rng);
      if (extend_direct(op, a, b, root) != oracle_convolution(op, a, b, root))
        return note_fail(note, "convolution oracle disagrees");
    }
  }
  for (int nx = 1; nx <= 3; ++nx)
    for (int ny = 1; ny <= 3; ++ny) {
      SpacePtr rx = make_root_space(FinSet::canonical(nx));
      SpacePtr ry = make_root_space(FinSet::canonical(ny));
      for (const auto& a : enumerate_elements(MonadKind::exp, rx, lim))
        for (const auto& b : enumerate_elements(MonadKind::exp, ry, lim))
          if (tensor(a, b) != oracle_tensor_exp(a, b))
            return note_fail(note, "Cartesian tensor oracle disagrees");
      Rng rng = instance_rng(42, 3200 + 10 * nx + ny);
      for (int i = 0; i < 300; ++i) {
        TElement a = sample_element(MonadKind::prob, rx, rng);
        TElement b = sample_element(MonadKind::prob, ry, rng);
        if (tensor(a, b) != oracle_tensor_prob(a, b))
          return note_fail(note, "product distribution oracle disagrees");
      }
    }
  return true;
}

bool criterion6(std::string& note) {
  for (auto k : {MonadKind::id, MonadKind::exp, MonadKind::lambda, MonadKind::incl,
                 MonadKind::prob}) {
    for (int n = 1; n <= 4; ++n) {
      auto r = check_tensor_unit(k, FinSet::canonical(n), FinSet::canonical(n),
                                 opts(Mode::exhaustive));
      if (!r.pass || r.mode_used != Mode::exhaustive)
        return note_fail(note, "tensor unit failed for " + kind_name(k));
    }
  }

  // every map pair between carriers of size <= 2
  std::vector<FinMap> small_maps;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      FinSet dom = FinSet::canonical(a), cod = FinSet::canonical(b);
      int total = 1;
      for (int i = 0; i < a; ++i) total *= b;
      for (int t = 0; t < total; ++t) {
        std::vector<int> tab(a);
        int rem = t;
        for (int i = 0; i < a; ++i) { tab[i] = rem % b; rem /= b; }
        small_maps.emplace_back(dom, cod, tab);
      }
    }
  for (const auto& hx : small_maps)
    for (const auto& hy : small_maps) {
      for (auto k : {MonadKind::id, MonadKind::exp, MonadKind::lambda, MonadKind::incl}) {
        auto r = check_tensor_naturality(k, hx, hy, opts(Mode::exhaustive));
        if (!r.pass) return note_fail(note, "naturality failed on a small map pair");
      }
      auto rp = check_tensor_naturality(MonadKind::prob, hx, hy, opts(Mode::sampled, 120));
      if (!rp.pass) return note_fail(note, "prob naturality failed on a small map pair");
    }

  Rng rng = instance_rng(42, 4001);
  FinSet three = FinSet::canonical(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> tx(3), ty(3);
    for (auto& v : tx) v = static_cast<int>(rng.below(3));
    for (auto& v : ty) v = static_cast<int>(rng.below(3));
    FinMap hx(three, three, tx), hy(three, three, ty);
    for (auto k : {MonadKind::exp, MonadKind::lambda, MonadKind::incl})
      if (!check_tensor_naturality(k, hx, hy, opts(Mode::exhaustive)).pass)
        return note_fail(note, "naturality failed on a random size-3 map pair");
    if (!check_tensor_naturality(MonadKind::prob, hx, hy, opts(Mode::sampled, 60)).pass)
      return note_fail(note, "prob naturality failed on a random size-3 map pair");
  }

  FinSet two = FinSet::canonical(2);
  for (auto k : {MonadKind::exp, MonadKind::lambda}) {
    auto r2 = check_tensor_associativity(k, two, two, two, opts(Mode::exhaustive));
    if (!r2.pass || r2.mode_used != Mode::exhaustive)
      return note_fail(note, "tensor associativity failed at size 2");
    auto r3 = check_tensor_associativity(k, three, three, three, opts(Mode::sampled, 1000));
    if (!r3.pass) return note_fail(note, "tensor associativity failed at size 3");
  }
  return true;
}

bool criterion7(std::string& note) {
  FinSet z4 = FinSet::canonical(4), z2 = FinSet::canonical(2);
  std::vector<int> add4(16), add2 = {0, 1, 1, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) add4[i * 4 + j] = (i + j) % 4;
  BinOpTable phi(z4, z4, z4, add4), psi(z2, z2, z2, add2);
  FinMap mod2(z4, z2, {0, 1, 0, 1});
  for (auto k : {MonadKind::exp, MonadKind::lambda}) {
    if (!check_homomorphism(k, phi, psi, mod2, mod2, mod2, opts(Mode::exhaustive)).pass)
      return note_fail(note, "quotient instance failed for " + kind_name(k));
  }
  if (!check_homomorphism(MonadKind::prob, phi, psi, mod2, mod2, mod2,
                          opts(Mode::sampled)).pass)
    return note_fail(note, "quotient instance failed for prob");

  Rng rng = instance_rng(42, 5001);
  for (int t = 0; t < 50; ++t) {
    int nx = 2 + static_cast<int>(rng.below(2));
    int ny = 2 + static_cast<int>(rng.below(2));
    int nz = 2 + static_cast<int>(rng.below(2));
    int qx = 1 + static_cast<int>(rng.below(3));
    int qy = 1 + static_cast<int>(rng.below(3));
    int qz = 1 + static_cast<int>(rng.below(nz));  // hz must be onto
    FinSet X = FinSet::canonical(nx), Y = FinSet::canonical(ny), Z = FinSet::canonical(nz);
    FinSet Xq = FinSet::canonical(qx), Yq = FinSet::canonical(qy), Zq = FinSet::canonical(qz);

    std::vector<int> hx(nx), hy(ny), hz(nz);
    for (auto& v : hx) v = static_cast<int>(rng.below(qx));
    for (auto& v : hy) v = static_cast<int>(rng.below(qy));
    for (int i = 0; i < nz; ++i) hz[i] = i < qz ? i : static_cast<int>(rng.below(qz));

    std::vector<int> down(static_cast<size_t>(qx) * qy);
    for (auto& v : down) v = static_cast<int>(rng.below(qz));
    BinOpTable small(Xq, Yq, Zq, down);

    // pull the table back so the square commutes by construction
    std::vector<int> up(static_cast<size_t>(nx) * ny);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) {
        int want = small.at(hx[x], hy[y]);
        std::vector<int> fiber;
        for (int z = 0; z < nz; ++z)
          if (hz[z] == want) fiber.push_back(z);
        up[static_cast<size_t>(x) * ny + y] = fiber[rng.below(fiber.size())];
      }
    BinOpTable big(X, Y, Z, up);
    FinMap mx(X, Xq, hx), my(Y, Yq, hy), mz(Z, Zq, hz);
    if (homomorphism_premise_violation(big, small, mx, my, mz))
      return note_fail(note, "constructed triple violates its own premise");
    for (auto k : {MonadKind::exp, MonadKind::lambda, MonadKind::incl})
      if (!check_homomorphism(k, big, small, mx, my, mz, opts(Mode::exhaustive)).pass)
        return note_fail(note, "random triple failed for " + kind_name(k));
    if (!check_homomorphism(MonadKind::prob, big, small, mx, my, mz,
                            opts(Mode::sampled, 150)).pass)
      return note_fail(note, "random triple failed for prob");
  }
  return true;
}

bool criterion8(std::string& note) {
  Limits lim;
  // brute force recompute, then compare against the pinned constants
  auto l2 = enumerate_mls_pair_selection(make_root_space(FinSet::canonical(2)));
  auto l3 = enumerate_mls_pair_selection(make_root_space(FinSet::canonical(3)));
  auto e3 = enumerate_elements(MonadKind::exp, make_root_space(FinSet::canonical(3)), lim);
  auto a2 = enumerate_binary_ops_vec(2, false);
  auto a3 = enumerate_binary_ops_vec(3, false);
  size_t c2 = 0, c3 = 0;
  for (const auto& op : a2) c2 += is_associative(op);
  for (const auto& op : a3) c3 += is_associative(op);

  if (l2.size() != 2) return note_fail(note, "|lambda(2)| != 2");
  if (l3.size() != 4) return note_fail(note, "|lambda(3)| != 4");
  if (e3.size() != 7) return note_fail(note, "|exp(3)| != 7");
  if (c2 != 8) return note_fail(note, "associative count at 2 != 8");
  if (c3 != 113) return note_fail(note, "associative count at 3 != 113");

  // the production enumerators must agree with the brute recomputation
  if (enumerate_elements(MonadKind::lambda, make_root_space(FinSet::canonical(2)), lim) != l2 ||
      enumerate_elements(MonadKind::lambda, make_root_space(FinSet::canonical(3)), lim) != l3)
    return note_fail(note, "primary enumeration drifted from brute force");
  if (enumerate_binary_ops_vec(2, true).size() != c2 ||
      enumerate_binary_ops_vec(3, true).size() != c3)
    return note_fail(note, "pruned op enumeration drifted from brute force");
  return true;
}

bool criterion9(std::string& note) {
  auto dir = std::filesystem::temp_directory_path();
  auto input = dir / "mext_accept_z3.json";
  std::ofstream(input) << R"({"elements":["0","1","2"],
    "table":[["0","1","2"],["1","2","0"],["2","0","1"]]})";

  auto capture = [&](const std::string& extra) -> std::pair<int, std::string> {
    std::string cmd = std::string(MEXT_CLI_BIN) + " --monad lambda --input " +
                      input.string() + " --mode sampled --samples 400 --seed 42 " + extra +
                      " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  };

  auto [c1, o1] = capture("");
  auto [c2, o2] = capture("");
  auto [c3, o3] = capture("--exec serial");
  if (c1 != 0 || c2 != 0 || c3 != 0) return note_fail(note, "cli run failed");
  if (o1.empty() || o1 != o2) return note_fail(note, "reports differ across runs");
  if (o1 != o3) return note_fail(note, "reports differ across backends");
  return true;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    bool (*fn)(std::string&);
    const char* annotation;
  };
  const Entry entries[] = {
      {1, criterion1, " (incl associativity via guarded sampled fallback)"},
      {2, criterion2, ""},
      {3, criterion3, ""},
      {4, criterion4, " (witness: ({0,1}, {0}, {1}) gives {0} vs {0,1})"},
      {5, criterion5, ""},
      {6, criterion6, ""},
      {7, criterion7, ""},
      {8, criterion8, ""},
      {9, criterion9, ""},
  };
  bool all_ok = true;
  for (const auto& e : entries) {
    std::string note;
    bool ok = false;
    try {
      ok = e.fn(note);
    } catch (const std::exception& ex) {
      note = std::string("exception: ") + ex.what();
    }
    std::cout << "criterion " << e.id << ": " << (ok ? "PASS" : "FAIL");
    if (ok && e.annotation[0]) std::cout << e.annotation;
    if (!ok && !note.empty()) std::cout << " (" << note << ")";
    std::cout << std::endl;
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
