#pragma once

#include <string>

#include "mext/extend.hpp"

namespace mext {

struct JobConfig {
  MonadKind kind = MonadKind::exp;
  std::string input_path;
  std::vector<std::string> checks = {"all"};
  Mode mode = Mode::exhaustive;
  uint64_t seed = 42;
  long long samples = 10000;
  Limits limits;
  bool allow_nonassociative = false;
  Exec exec = default_exec();
};

// {"elements": [...], "table": [[...], ...]}, square, entries drawn from
// elements. Malformed documents raise parse_error with a location.
BinOpTable parse_table(const std::string& json_text);

struct Report {
  JobConfig job;
  BinOpTable op;
  bool op_associative = false;
  std::vector<LawReport> checks;
  bool has_extended = false;
  std::string extended_omitted;  // reason, when a table was not emitted
  std::vector<std::string> extended_elements;
  std::vector<std::vector<std::string>> extended_table;
  bool has_idempotents = false;
  std::vector<std::string> idempotent_elements;
  double seconds = 0.0;
};

const std::vector<std::string>& known_checks();

Report run_job(const JobConfig& cfg);

// json output is byte-stable for a fixed config and seed; timing is opt-in
// so reruns stay comparable.
std::string emit_report(const Report& r, const std::string& format, bool timing);

int report_exit_code(const Report& r);

}  // namespace mext
