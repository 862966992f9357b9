#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mext/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"extend a finite binary operation along a monadic functor and check the laws"};

  std::string monad;
  std::string input;
  std::vector<std::string> checks = {"all"};
  std::string mode = "exhaustive";
  std::uint64_t seed = 42;
  long long samples = 10000;
  long long max_carrier = 1000000;
  std::string format = "json";
  std::string exec = "auto";
  bool allow_nonassociative = false;
  bool timing = false;

  app.add_option("--monad", monad, "carrier functor: id, exp, lambda, incl, prob")
      ->required()
      ->check(CLI::IsMember({"id", "exp", "lambda", "incl", "prob"}));
  app.add_option("--input", input, "path to a json file with {\"elements\", \"table\"}")
      ->required();
  app.add_option("--check", checks,
                 "comma separated subset of: laws, axioms, uniqueness, associativity, "
                 "tensor, homomorphism, oracles, idempotents, or all")
      ->delimiter(',');
  app.add_option("--mode", mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  app.add_option("--seed", seed, "rng seed for sampled sweeps");
  app.add_option("--samples", samples, "instances per sampled law")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-carrier", max_carrier, "refuse enumerations beyond this size")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--exec", exec, "sweep backend: serial, parallel, auto")
      ->check(CLI::IsMember({"serial", "parallel", "auto"}));
  app.add_flag("--allow-nonassociative", allow_nonassociative,
               "proceed when the input table is not associative");
  app.add_flag("--timing", timing, "include wall-clock seconds in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // the contract reserves 2 for configuration problems
  }

  mext::JobConfig cfg;
  cfg.input_path = input;
  cfg.checks = checks;
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.limits.max_carrier = max_carrier;
  cfg.allow_nonassociative = allow_nonassociative;
  cfg.mode = mode == "sampled" ? mext::Mode::sampled : mext::Mode::exhaustive;
  if (exec == "serial") cfg.exec = mext::Exec::serial;
  else if (exec == "parallel") cfg.exec = mext::Exec::parallel;
  else cfg.exec = mext::default_exec();

  try {
    cfg.kind = mext::kind_from_name(monad);
    mext::Report report = mext::run_job(cfg);
    std::cout << mext::emit_report(report, format, timing);
    return mext::report_exit_code(report);
  } catch (const mext::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mext::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mext::guard_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mext::capability_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
