#include "mext/job.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mext/errors.hpp"

namespace mext {

using nlohmann::json;

BinOpTable parse_table(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("elements") || !doc.contains("table"))
    throw parse_error("expected an object with \"elements\" and \"table\"");
  if (!doc["elements"].is_array()) throw parse_error("\"elements\" must be an array");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string()) throw parse_error("element labels must be strings");
    std::string s = e.get<std::string>();
    if (s.find_first_of("(),") != std::string::npos)
      throw parse_error("label \"" + s + "\" may not contain '(', ')' or ','");
    if (!seen.insert(s).second) throw parse_error("duplicate element \"" + s + "\"");
    labels.push_back(std::move(s));
  }
  if (labels.empty()) throw parse_error("\"elements\" is empty");
  FinSet x(labels);
  if (!doc["table"].is_array() || doc["table"].size() != labels.size())
    throw parse_error("\"table\" must have one row per element");
  std::vector<int> cells;
  cells.reserve(labels.size() * labels.size());
  for (size_t i = 0; i < doc["table"].size(); ++i) {
    const auto& row = doc["table"][i];
    if (!row.is_array() || row.size() != labels.size())
      throw parse_error("row " + std::to_string(i) + " is ragged");
    for (size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_string())
        throw parse_error("cell (" + std::to_string(i) + "," + std::to_string(j) +
                          ") must be a string");
      int v = x.index_of(row[j].get<std::string>());
      if (v < 0)
        throw parse_error("cell (" + std::to_string(i) + "," + std::to_string(j) +
                          ") holds unknown label \"" + row[j].get<std::string>() + "\"");
      cells.push_back(v);
    }
  }
  return BinOpTable(x, x, x, std::move(cells));
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "laws",  "axioms",       "uniqueness", "associativity",
      "tensor", "homomorphism", "oracles",    "idempotents"};
  return names;
}

namespace {

constexpr uint64_t stream(int tag, long long i) {
  return (static_cast<uint64_t>(tag) << 40) | static_cast<uint64_t>(i);
}

FinMap random_endomap(const FinSet& x, Rng& rng) {
  std::vector<int> tab(x.size());
  for (auto& v : tab) v = static_cast<int>(rng.below(x.size()));
  return FinMap(x, x, std::move(tab));
}

LawReport check_uniqueness(MonadKind k, const BinOpTable& op, const LawOptions& opt) {
  SpacePtr rx = make_root_space(op.left), ry = make_root_space(op.right);
  SpacePtr rz = make_root_space(op.out);
  auto instance = [&](const TElement& a, const TElement& b) -> LawInstance {
    TElement d = extend_direct(op, a, b, rz);
    TElement t = extend_via_tensor(op, a, b, rz);
    return {{render(a), render(b)}, render(d), render(t), d == t};
  };
  if (opt.mode == Mode::exhaustive) {
    try {
      std::vector<TElement> ta = enumerate_elements(k, rx, opt.limits);
      std::vector<TElement> tb = enumerate_elements(k, ry, opt.limits);
      return run_law(
          "uniqueness", static_cast<long long>(ta.size()) * tb.size(), Mode::exhaustive,
          false, [&](long long i) { return instance(ta[i / tb.size()], tb[i % tb.size()]); },
          opt.exec);
    } catch (const guard_error&) {
    } catch (const capability_error&) {
    }
  }
  bool fallback = opt.mode == Mode::exhaustive;
  return run_law(
      "uniqueness", opt.samples, Mode::sampled, fallback,
      [&](long long i) {
        Rng rng = instance_rng(opt.seed, stream(20, i));
        return instance(sample_element(k, rx, rng), sample_element(k, ry, rng));
      },
      opt.exec);
}

// Oracle agreement per monad: direct table lookup (id), setwise product and
// Cartesian tensor (exp), convolution and product distribution (prob), the
// literal upper-set multiplication (lambda/incl).
std::vector<LawReport> check_oracles(MonadKind k, const BinOpTable& op, const LawOptions& opt) {
  SpacePtr rx = make_root_space(op.left), ry = make_root_space(op.right);
  SpacePtr rz = make_root_space(op.out);
  std::vector<LawReport> out;

  auto pair_law = [&](const std::string& name, int tag,
                      const std::function<LawInstance(const TElement&, const TElement&)>& inst) {
    if (opt.mode == Mode::exhaustive && enumerable(k)) {
      try {
        std::vector<TElement> ta = enumerate_elements(k, rx, opt.limits);
        std::vector<TElement> tb = enumerate_elements(k, ry, opt.limits);
        out.push_back(run_law(
            name, static_cast<long long>(ta.size()) * tb.size(), Mode::exhaustive, false,
            [&](long long i) { return inst(ta[i / tb.size()], tb[i % tb.size()]); },
            opt.exec));
        return;
      } catch (const guard_error&) {
      } catch (const capability_error&) {
      }
    }
    bool fallback = opt.mode == Mode::exhaustive && enumerable(k);
    out.push_back(run_law(
        name, opt.samples, Mode::sampled, fallback,
        [&, tag](long long i) {
          Rng rng = instance_rng(opt.seed, stream(tag, i));
          return inst(sample_element(k, rx, rng), sample_element(k, ry, rng));
        },
        opt.exec));
  };

  switch (k) {
    case MonadKind::id:
      pair_law("oracle-table", 21, [&](const TElement& a, const TElement& b) -> LawInstance {
        TElement lhs = extend_direct(op, a, b, rz);
        TElement rhs = make_point(k, rz, op.at(std::get<Point>(a.payload).atom,
                                               std::get<Point>(b.payload).atom));
        return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
      });
      break;
    case MonadKind::exp:
      pair_law("oracle-setwise", 22, [&](const TElement& a, const TElement& b) -> LawInstance {
        TElement lhs = extend_direct(op, a, b, rz);
        TElement rhs = oracle_setwise(op, a, b, rz);
        return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
      });
      pair_law("oracle-cartesian", 23, [&](const TElement& a, const TElement& b) -> LawInstance {
        TElement lhs = tensor(a, b);
        TElement rhs = oracle_tensor_exp(a, b);
        return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
      });
      break;
    case MonadKind::lambda:
    case MonadKind::incl:
      pair_law("oracle-upper-mult", 24, [&](const TElement& a, const TElement& b) -> LawInstance {
        TElement lhs = extend_direct(op, a, b, rz);
        TElement rhs = extend_direct_upper(op, a, b, rz, opt.limits);
        return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
      });
      break;
    case MonadKind::prob:
      pair_law("oracle-convolution", 25, [&](const TElement& a, const TElement& b) -> LawInstance {
        TElement lhs = extend_direct(op, a, b, rz);
        TElement rhs = oracle_convolution(op, a, b, rz);
        return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
      });
      pair_law("oracle-product", 26, [&](const TElement& a, const TElement& b) -> LawInstance {
        TElement lhs = tensor(a, b);
        TElement rhs = oracle_tensor_prob(a, b);
        return {{render(a), render(b)}, render(lhs), render(rhs), lhs == rhs};
      });
      break;
  }
  return out;
}

// Look for a quotient the operation descends to; the induced table then
// satisfies the homomorphism premise by construction. Falls back to the
// identity quotient when the search finds nothing nontrivial.
std::pair<BinOpTable, FinMap> find_congruence(const BinOpTable& op, uint64_t seed) {
  int n = op.left.size();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng = instance_rng(seed, stream(27, attempt));
    int q = 1 + static_cast<int>(rng.below(std::max(1, n - 1)));  // proper quotient sizes
    std::vector<int> cls(n);
    for (auto& c : cls) c = static_cast<int>(rng.below(q));
    // Normalize class ids by first occurrence so labels are canonical.
    std::vector<int> order(q, -1);
    int next = 0;
    for (auto& c : cls) {
      if (order[c] < 0) order[c] = next++;
      c = order[c];
    }
    q = next;
    if (q == n || q == 1) continue;
    bool congruent = true;
    std::vector<int> induced(static_cast<size_t>(q) * q, -1);
    for (int x = 0; x < n && congruent; ++x)
      for (int y = 0; y < n && congruent; ++y) {
        int& cell = induced[static_cast<size_t>(cls[x]) * q + cls[y]];
        int v = cls[op.at(x, y)];
        if (cell < 0)
          cell = v;
        else if (cell != v)
          congruent = false;
      }
    if (!congruent) continue;
    std::vector<std::string> qlabels(q);
    for (int x = 0; x < n; ++x)
      if (qlabels[cls[x]].empty()) qlabels[cls[x]] = op.left.label(x);
    FinSet qset(qlabels);
    BinOpTable psi(qset, qset, qset, induced);
    return {psi, FinMap(op.left, qset, cls)};
  }
  return {op, FinMap::identity(op.left)};
}

void append_extended(Report& r, const JobConfig& cfg) {
  if (!enumerable(cfg.kind)) {
    r.extended_omitted = "carrier not enumerable";
    return;
  }
  if (!r.op_associative && !cfg.allow_nonassociative) {
    r.extended_omitted = "operation not associative";
    return;
  }
  try {
    ExtendedOp ext = extended_cayley_table(cfg.kind, r.op, cfg.limits, cfg.allow_nonassociative);
    int n = ext.carrier->set.size();
    if (static_cast<long long>(n) * n > cfg.limits.max_carrier) {
      r.extended_omitted = "extended table exceeds the size guard";
      return;
    }
    r.has_extended = true;
    for (int i = 0; i < n; ++i) r.extended_elements.push_back(ext.carrier->set.label(i));
    r.extended_table.assign(n, std::vector<std::string>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.extended_table[i][j] = ext.carrier->set.label(ext.at(i, j));
    if (std::find(r.job.checks.begin(), r.job.checks.end(), "idempotents") !=
        r.job.checks.end()) {
      r.has_idempotents = true;
      for (const auto& e : idempotents(ext)) r.idempotent_elements.push_back(render(e));
      r.checks.push_back(LawReport{"idempotents", true,
                                   static_cast<long long>(n), Mode::exhaustive, false, {}});
    }
  } catch (const guard_error& e) {
    r.extended_omitted = e.what();
  }
}

}  // namespace

Report run_job(const JobConfig& cfg) {
  auto started = std::chrono::steady_clock::now();
  Report r;
  r.job = cfg;

  std::ifstream in(cfg.input_path);
  if (!in) throw config_error("cannot open input: " + cfg.input_path);
  std::stringstream buf;
  buf << in.rdbuf();
  r.op = parse_table(buf.str());
  if (r.op.left.size() > cfg.limits.max_carrier)
    throw guard_error("input carrier has " + std::to_string(r.op.left.size()) +
                      " elements, over the max-carrier guard");
  r.op_associative = is_associative(r.op);

  std::set<std::string> want;
  for (const auto& c : cfg.checks) {
    if (c == "all") {
      for (const auto& k : known_checks()) want.insert(k);
      if (!enumerable(cfg.kind)) want.erase("idempotents");
    } else if (std::find(known_checks().begin(), known_checks().end(), c) !=
               known_checks().end()) {
      want.insert(c);
    } else {
      throw config_error("unknown check: " + c);
    }
  }
  if (want.count("idempotents") && !enumerable(cfg.kind))
    throw config_error("idempotents need an enumerable carrier");
  if (want.count("associativity") && !r.op_associative && !cfg.allow_nonassociative)
    throw config_error("operation is not associative; pass --allow-nonassociative to check anyway");

  r.job.checks.assign(want.begin(), want.end());
  std::sort(r.job.checks.begin(), r.job.checks.end(), [](const auto& a, const auto& b) {
    const auto& order = known_checks();
    return std::find(order.begin(), order.end(), a) < std::find(order.begin(), order.end(), b);
  });

  LawOptions opt{cfg.mode, cfg.seed, cfg.samples, cfg.limits, cfg.exec};
  for (const auto& name : r.job.checks) {
    if (name == "laws") {
      auto rs = check_monad_laws(cfg.kind, r.op.left, opt);
      r.checks.insert(r.checks.end(), rs.begin(), rs.end());
    } else if (name == "axioms") {
      auto rs = check_extension_axioms(cfg.kind, r.op, opt);
      r.checks.insert(r.checks.end(), rs.begin(), rs.end());
    } else if (name == "uniqueness") {
      r.checks.push_back(check_uniqueness(cfg.kind, r.op, opt));
    } else if (name == "associativity") {
      r.checks.push_back(check_extension_associativity(cfg.kind, r.op, opt));
    } else if (name == "tensor") {
      r.checks.push_back(check_tensor_unit(cfg.kind, r.op.left, r.op.right, opt));
      Rng rng = instance_rng(cfg.seed, stream(28, 0));
      FinMap hx = random_endomap(r.op.left, rng);
      FinMap hy = random_endomap(r.op.right, rng);
      r.checks.push_back(check_tensor_naturality(cfg.kind, hx, hy, opt));
      r.checks.push_back(check_tensor_associativity(cfg.kind, r.op.left, r.op.right, r.op.out, opt));
    } else if (name == "homomorphism") {
      auto [psi, h] = find_congruence(r.op, cfg.seed);
      r.checks.push_back(check_homomorphism(cfg.kind, r.op, psi, h, h, h, opt));
    } else if (name == "oracles") {
      auto rs = check_oracles(cfg.kind, r.op, opt);
      r.checks.insert(r.checks.end(), rs.begin(), rs.end());
    }
  }
  append_extended(r, cfg);

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

namespace {

json law_to_json(const LawReport& lr) {
  json j;
  j["law"] = lr.law;
  j["status"] = lr.pass ? "pass" : "fail";
  j["instances"] = lr.instances;
  j["mode"] = mode_name(lr.mode_used);
  j["sampled_fallback"] = lr.sampled_fallback;
  if (lr.cx) {
    json c;
    c["inputs"] = lr.cx->inputs;
    c["lhs"] = lr.cx->lhs;
    c["rhs"] = lr.cx->rhs;
    j["counterexample"] = c;
  }
  return j;
}

json table_to_json(const BinOpTable& op) {
  json t;
  t["elements"] = op.left.labels();
  std::vector<std::vector<std::string>> rows(op.left.size(),
                                             std::vector<std::string>(op.right.size()));
  for (int i = 0; i < op.left.size(); ++i)
    for (int j = 0; j < op.right.size(); ++j) rows[i][j] = op.out.label(op.at(i, j));
  t["table"] = rows;
  return t;
}

}  // namespace

std::string emit_report(const Report& r, const std::string& format, bool timing) {
  if (format == "json") {
    json j;
    j["version"] = "1";
    json job;
    job["monad"] = kind_name(r.job.kind);
    job["input"] = r.job.input_path;
    job["checks"] = r.job.checks;
    job["mode"] = mode_name(r.job.mode);
    job["seed"] = r.job.seed;
    job["samples"] = r.job.samples;
    job["max_carrier"] = r.job.limits.max_carrier;
    job["allow_nonassociative"] = r.job.allow_nonassociative;
    j["job"] = job;
    j["table"] = table_to_json(r.op);
    j["associative"] = r.op_associative;
    json checks = json::array();
    for (const auto& lr : r.checks) checks.push_back(law_to_json(lr));
    j["checks"] = checks;
    if (r.has_extended) {
      json ext;
      ext["elements"] = r.extended_elements;
      ext["table"] = r.extended_table;
      j["extended"] = ext;
    } else if (!r.extended_omitted.empty()) {
      j["extended_omitted"] = r.extended_omitted;
    }
    if (r.has_idempotents) j["idempotents"] = r.idempotent_elements;
    if (timing) j["timing_seconds"] = r.seconds;
    return j.dump(2) + "\n";
  }
  if (format != "text") throw config_error("unknown format: " + format);

  std::ostringstream os;
  os << "monad: " << kind_name(r.job.kind) << "\n";
  os << "elements: " << r.op.left.size() << ", "
     << (r.op_associative ? "associative" : "not associative") << "\n";
  for (const auto& lr : r.checks) {
    os << "check " << lr.law << ": " << (lr.pass ? "pass" : "FAIL") << " (" << lr.instances
       << " instances, " << mode_name(lr.mode_used)
       << (lr.sampled_fallback ? ", guarded fallback" : "") << ")\n";
    if (lr.cx) {
      os << "  inputs:";
      for (const auto& in : lr.cx->inputs) os << " " << in;
      os << "\n  lhs: " << lr.cx->lhs << "\n  rhs: " << lr.cx->rhs << "\n";
    }
  }
  if (r.has_extended) {
    os << "extended table over " << r.extended_elements.size() << " elements:\n";
    for (size_t i = 0; i < r.extended_elements.size(); ++i) {
      os << "  " << r.extended_elements[i] << " :";
      for (size_t j = 0; j < r.extended_elements.size(); ++j)
        os << " " << r.extended_table[i][j];
      os << "\n";
    }
  } else if (!r.extended_omitted.empty()) {
    os << "extended table omitted: " << r.extended_omitted << "\n";
  }
  if (r.has_idempotents) {
    os << "idempotents:";
    for (const auto& e : r.idempotent_elements) os << " " << e;
    os << "\n";
  }
  if (timing) os << "timing_seconds: " << r.seconds << "\n";
  return os.str();
}

int report_exit_code(const Report& r) { return all_pass(r.checks) ? 0 : 1; }

}  // namespace mext
