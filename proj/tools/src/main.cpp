#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sprlat/errors.hpp"
#include "sprlat_cli/commands.hpp"
#include "sprlat_cli/problem_file.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace sprlat::cli;

  CLI::App app{"Phase retrieval stability analysis for subspaces of weighted lp spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  bool json = false;
  std::string out_path;
  std::string file;
  std::optional<double> tol, eps, C;
  app.add_option("--restarts", opts.restarts, "Random restarts per search")->capture_default_str();
  app.add_option("--iters", opts.iters, "Nelder-Mead iterations per restart")->capture_default_str();
  app.add_option("--seed", opts.seed, "Seed for all randomized searches")->capture_default_str();
  app.add_option("--tol", tol, "Tolerance for the command's cross-checks");
  app.add_option("--m", opts.m, "Separation level(s) m");
  app.add_option("--eps", eps, "Perpendicularity threshold eps");
  app.add_option("--C", C, "Stability constant C");
  app.add_option("--delta", opts.delta, "delta for `example c4`")->capture_default_str();
  app.add_option("--dim", opts.dim, "Dimension for `verify` suites");
  app.add_option("--samples", opts.samples, "Sample count for `verify` suites");
  app.add_option("--p", opts.p, "Norm exponent for `verify` suites (number or inf)");
  app.add_flag("--json", json, "Emit the report as JSON");
  app.add_option("--out", out_path, "Write the report to PATH instead of stdout");

  auto* analyze = app.add_subcommand("analyze", "Estimate the SPR constant and the minimal disjointness");
  auto* search_disjoint = app.add_subcommand("search-disjoint", "Search for an almost disjoint normalized pair");
  auto* search_perp = app.add_subcommand("search-perp", "Search for separated almost perpendicular pairs");
  auto* reduce = app.add_subcommand("reduce", "Orthogonal reduction of a pair in a fitted Hilbert norm");
  for (auto* sub : {analyze, search_disjoint, search_perp}) {
    sub->add_option("file", file, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  }
  reduce->add_option("file", file, "Pair file (JSON)")->required()->check(CLI::ExistingFile);

  auto* build = app.add_subcommand("build", "Witness constructions");
  build->require_subcommand(1);
  std::string build_kind;
  for (const char* kind : {"adp2spr", "spr2perp", "perp2spr", "pr-equiv"}) {
    auto* sub = build->add_subcommand(kind);
    sub->add_option("file", file, "Pair file (JSON)")->required()->check(CLI::ExistingFile);
    sub->callback([&build_kind, kind] { build_kind = kind; });
  }

  auto* verify = app.add_subcommand("verify", "Randomized self-checks");
  verify->require_subcommand(1);
  std::string suite;
  for (const char* name : {"identities", "real-spr", "complex-spr"}) {
    verify->add_subcommand(name)->callback([&suite, name] { suite = name; });
  }

  auto* example = app.add_subcommand("example", "Built-in examples");
  example->require_subcommand(1);
  example->add_subcommand("c4", "The two-dimensional subspace of complex l_inf^4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opts.tol = tol;
  opts.eps = eps;
  opts.C = C;

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (*analyze) {
      outcome = cmd_analyze(file, opts);
    } else if (*search_disjoint) {
      outcome = cmd_search_disjoint(file, opts);
    } else if (*search_perp) {
      outcome = cmd_search_perp(file, opts);
    } else if (*reduce) {
      outcome = cmd_reduce(file, opts);
    } else if (*build) {
      outcome = cmd_build(build_kind, file, opts);
    } else if (*verify) {
      outcome = cmd_verify(suite, opts);
    } else {
      outcome = cmd_example_c4(opts);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sprlat::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sprlat::InvariantViolation& e) {
    std::cerr << "assertion violated: " << e.what() << "\n";
    return kExitViolated;
  }
  outcome.report["assertions_held"] = outcome.held;
  outcome.report["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const std::string text = json ? outcome.report.dump(2) + "\n" : to_text(outcome.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!(out << text)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
  }
  for (const auto& v : outcome.violations) std::cerr << "assertion violated: " << v << "\n";
  return outcome.held ? kExitOk : kExitViolated;
}
