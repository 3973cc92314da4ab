#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tangle/app/cli.hpp"
#include "tangle/app/scenarios.hpp"
#include "tangle/app/verify.hpp"

#ifndef TANGLE_VERSION
#define TANGLE_VERSION "0.0.0"
#endif

namespace tangle::app {

using json = nlohmann::json;

namespace {

struct Flags {
  std::string config_path;
  std::string scenario;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

json overrides_from(const Flags& f) {
  json o = json::object();
  if (!f.scenario.empty()) o["scenario"] = f.scenario;
  if (!f.out.empty()) o["outputs"]["path"] = f.out;
  if (!f.format.empty()) o["outputs"]["format"] = f.format;
  if (f.seed) o["seed"] = *f.seed;
  if (f.tol) o["tol"] = *f.tol;
  return o;
}

int run_trace(const Flags& f, std::ostream& out, std::ostream& err) {
  std::string text;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path, std::ios::binary);
    if (!in) {
      err << "error: cannot read config " << f.config_path << '\n';
      return kExitIo;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (!f.scenario.empty()) {
    text = R"({"v": 1})";
  } else {
    err << "error: one of --config or --scenario is required\n";
    return kExitValidation;
  }

  std::optional<RunConfig> cfg;
  RunResult result;
  try {
    cfg = parse_config(text, overrides_from(f));
    result = run(*cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    emit(result.report, cfg->format, cfg->path, out);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  }
  for (const auto& b : result.breaches) err << "tolerance breach: " << b << '\n';
  return result.status;
}

int run_verify(int trials, std::uint64_t seed, std::ostream& out) {
  bool ok = true;
  for (const auto& r : run_property_sweeps(trials, seed)) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitTolerance;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Entanglement of tangent vectors of product, pseudo-pure and separable mixed states",
               "tangle");
  app.set_version_flag("--version", TANGLE_VERSION);

  Flags flags;
  app.add_option("--config", flags.config_path, "JSON run configuration");
  app.add_option("--scenario", flags.scenario,
                 "two_qubit_demo, product_trace, register_trace, pseudo_pure, separable_mixed, "
                 "chsh_scan");
  app.add_option("--out", flags.out, "output path, - for standard output");
  app.add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", flags.seed, "seed for randomized curves");
  app.add_option("--tol", flags.tol, "tolerance for breach checks")->check(CLI::PositiveNumber);

  int trials = 1000;
  std::uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "randomized property sweeps");
  verify->add_option("--trials", trials, "trials per property")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_seed, "sweep seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (verify->parsed()) return run_verify(trials, verify_seed, out);
  return run_trace(flags, out, err);
}

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace tangle::app
