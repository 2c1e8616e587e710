#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sprlat_cli/report.hpp"

namespace sprlat::cli {

struct Options {
  int restarts = 20;
  int iters = 400;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::vector<double> m;
  std::optional<double> eps;
  std::optional<double> C;
  double delta = 1.0 / 99.0;
  int dim = 0;       // 0: command default
  int samples = 0;   // 0: command default
  std::string p = "";  // norm exponent for verify suites; "" : command default
};

struct Outcome {
  Json report;
  /// False when an inequality the command asserts did not hold.
  bool held = true;
  std::vector<std::string> violations;
};

Outcome cmd_analyze(const std::string& path, const Options& opts);
Outcome cmd_search_disjoint(const std::string& path, const Options& opts);
Outcome cmd_search_perp(const std::string& path, const Options& opts);
Outcome cmd_reduce(const std::string& path, const Options& opts);
Outcome cmd_build(const std::string& kind, const std::string& path, const Options& opts);
Outcome cmd_verify(const std::string& suite, const Options& opts);
Outcome cmd_example_c4(const Options& opts);

/// Norm exponent from text: a number >= 1 or "inf".
double parse_exponent(const std::string& text);

}  // namespace sprlat::cli
