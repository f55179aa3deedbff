// mclab: seeded experiment runner for Fourier multipliers on finite abelian groups.
//
//   mclab run --suite fuglede --group 3,4 --trials 500 --seed 42 --out report.json
//   mclab run --config experiment.json
//   mclab circle --m 256 --p 2 --out circle.json
//   mclab commutant --instance inst.json --out verdict.json
//
// Exit codes: 0 PASS, 1 FAIL, 2 bad arguments or config, 3 INDETERMINATE
// (no FAIL), 4 I/O failure.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mclab/io.hpp"
#include "mclab/report.hpp"
#include "mclab/suites.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_config = 2;
constexpr int exit_indeterminate = 3;
constexpr int exit_io = 4;

int exit_code_for(mclab::Verdict v) {
  switch (v) {
    case mclab::Verdict::pass:
      return exit_pass;
    case mclab::Verdict::indeterminate:
      return exit_indeterminate;
    case mclab::Verdict::fail:
      return exit_fail;
  }
  return exit_fail;
}

void apply_order_cap() {
  const char* env = std::getenv("MCLAB_MAX_N");
  if (env == nullptr || *env == '\0') return;
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || v < 2) {
    throw mclab::config_error(std::string("MCLAB_MAX_N must be an integer >= 2, got '") + env + "'");
  }
  mclab::dense_order_cap() = static_cast<std::size_t>(v);
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return mclab::infinity;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw mclab::config_error("p must be a number >= 1 or 'inf', got '" + s + "'");
  return p;
}

void write_or_print(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    mclab::write_text_file(out, text);
  }
}

struct RunOptions {
  std::string config;
  std::string suite;
  std::string group;
  std::vector<std::string> norms;
  long long trials = 100;
  std::string seed = "0";
  std::optional<double> eps_abs, eps_rel, tol_resid, tol_sym;
  std::string out;
};

mclab::ExperimentConfig config_from_options(const RunOptions& o) {
  if (!o.config.empty()) {
    if (!o.suite.empty() || !o.group.empty() || !o.norms.empty()) {
      throw mclab::config_error("--config cannot be combined with --suite/--group/--norm");
    }
    const std::filesystem::path path(o.config);
    auto c = mclab::config_from_json(mclab::read_json_file(path), path.parent_path());
    if (!o.out.empty()) c.out = o.out;
    return c;
  }
  if (o.suite.empty() || o.group.empty()) throw mclab::config_error("run needs --suite and --group (or --config)");
  if (o.trials < 1) throw mclab::config_error("--trials must be >= 1");
  mclab::ExperimentConfig c;
  c.suite = o.suite;
  try {
    c.group = mclab::parse_group(o.group);
  } catch (const std::invalid_argument& e) {
    throw mclab::config_error(e.what());
  }
  c.norms = o.norms;
  c.trials = static_cast<std::size_t>(o.trials);
  c.seed = mclab::parse_seed(mclab::json(o.seed));
  if (o.eps_abs) c.thresholds.eps_abs = *o.eps_abs;
  if (o.eps_rel) c.thresholds.eps_rel = *o.eps_rel;
  if (o.tol_resid) c.thresholds.tol_resid = *o.tol_resid;
  if (o.tol_sym) c.thresholds.tol_sym = *o.tol_sym;
  c.out = o.out;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier multipliers on finite abelian groups: property suites and experiments"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a seeded property suite and emit a JSON report");
  run_cmd->add_option("--config", run.config, "JSON experiment config (schema 1)");
  run_cmd->add_option("--suite", run.suite, "fourier | algebra | spaces | fuglede");
  run_cmd->add_option("--group", run.group, "Invariant factors, e.g. 3,4");
  run_cmd->add_option("--norm", run.norms, "Norm descriptor (repeatable), e.g. lp:p=2");
  run_cmd->add_option("--trials", run.trials, "Number of seeded trials");
  run_cmd->add_option("--seed", run.seed, "64-bit seed (decimal or 0x hex)");
  run_cmd->add_option("--eps-abs", run.eps_abs, "Support threshold, absolute");
  run_cmd->add_option("--eps-rel", run.eps_rel, "Support threshold, relative to max entry");
  run_cmd->add_option("--tol-resid", run.tol_resid, "Intertwining residual tolerance");
  run_cmd->add_option("--tol-sym", run.tol_sym, "Symbol equality tolerance");
  run_cmd->add_option("--out", run.out, "Report path (stdout when omitted)");

  int circle_m = 256;
  std::string circle_p = "2";
  std::string circle_out;
  auto* circle_cmd = app.add_subcommand("circle", "Translation continuity and E_g asymmetry on Z_M");
  circle_cmd->add_option("--m", circle_m, "Even number of sample points, >= 8");
  circle_cmd->add_option("--p", circle_p, "Exponent in [1, inf]");
  circle_cmd->add_option("--out", circle_out, "Output path (stdout when omitted)");

  std::string instance_path, verdict_out;
  auto* commutant_cmd = app.add_subcommand("commutant", "Check one intertwining instance file");
  commutant_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
  commutant_cmd->add_option("--out", verdict_out, "Verdict path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    apply_order_cap();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (*run_cmd) {
      const auto config = config_from_options(run);
      const auto report = mclab::run_suite(config);
      write_or_print(mclab::canonical_dump(mclab::to_json(report)), config.out);
      const auto v = report.verdict();
      std::cerr << "suite " << report.suite << " on (" << report.group << "): " << mclab::to_string(v) << " in "
                << elapsed() << " s\n";
      return exit_code_for(v);
    }
    if (*circle_cmd) {
      const double p = parse_p(circle_p);
      const auto report = mclab::circle_experiment(circle_m, p);
      write_or_print(mclab::canonical_dump(mclab::to_json(report)), circle_out);
      std::cerr << "circle M=" << circle_m << ": " << mclab::to_string(report.verdict()) << " in " << elapsed()
                << " s\n";
      return exit_code_for(report.verdict());
    }
    if (*commutant_cmd) {
      const auto inst = mclab::instance_from_json(mclab::read_json_file(instance_path));
      const auto verdict = mclab::commutant_verdict(inst);
      write_or_print(mclab::canonical_dump(verdict), verdict_out);
      const std::string v = verdict.at("verdict");
      return v == "PASS" ? exit_pass : v == "INDETERMINATE" ? exit_indeterminate : exit_fail;
    }
  } catch (const mclab::config_error& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return exit_config;
  } catch (const mclab::io_error& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return exit_io;
  } catch (const std::invalid_argument& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return exit_config;
  } catch (const std::domain_error& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return exit_config;
  } catch (const std::length_error& e) {
    std::cerr << "mclab: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}
