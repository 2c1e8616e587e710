#pragma once

// Randomized self-checks of the functional-calculus identities and of the
// characterization theorems, as run by `sprlat verify ...`.

#include <cstdint>
#include <string>
#include <vector>

#include "sprlat/lattice.hpp"
#include "sprlat/spr_search.hpp"

namespace sprlat {

struct CheckTally {
  std::string name;
  long checks = 0;
  long failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;

  bool passed() const { return failures == 0; }
  void record(double error, double scale = 1.0);
};

struct VerifyReport {
  std::vector<CheckTally> checks;
  bool passed() const;
};

/// Coordinatewise identities for random pairs in dimension `dim`, plus
/// norm-level consequences for each exponent in `exponents`:
///  - |xy|^(1/2) = (|x| v |y|)^(1/2) (|x| ^ |y|)^(1/2)
///  - |Re (a f) conj(b g)|^(1/2) = |a|^(1/2) |b|^(1/2) |Re f conj(g)|^(1/2)
///    for real a, b (and complex a, b sharing a phase)
///  - 2 |Re f conj(g)|^(1/2) = | |f+g|^2 - |f-g|^2 |^(1/2)
///                           = (|f+g| + |f-g|)^(1/2) | |f+g| - |f-g| |^(1/2)
///  - |f| ^ |g| <= |fg|^(1/2), norm monotonicity and absoluteness.
VerifyReport verify_identities(Eigen::Index dim, int samples, std::uint64_t seed,
                               const std::vector<double>& exponents = {1.0, 2.0, 3.0, kInf});

struct RealSprCase {
  double c_lower = 0.0;
  bool unbounded = false;
  double min_disjointness = 0.0;
  double relative_gap = 0.0;  // |1/c_lower - eps| / eps
  double min_product = 0.0;   // || |uv|^(1/2) || on the disjointness witness
};

struct RealSprReport {
  std::vector<RealSprCase> cases;
  VerifyReport checks;
};

/// Random two-dimensional subspaces of R^dim: compares 1/c_lower with the
/// minimal disjointness (10% band) and checks
/// || |u| ^ |v| || <= || |uv|^(1/2) || <= sqrt(2 || |u| ^ |v| ||) on witnesses.
RealSprReport verify_real_spr(int subspaces, Eigen::Index dim, const NormSpec& norm, const SearchBudget& budget,
                              std::uint64_t seed);

/// Round trips through the complex builders on random disjoint-pair data:
/// almost disjoint -> SPR violation -> separated perpendicular pair, and
/// perpendicular pair -> SPR violation at a strictly larger constant.
VerifyReport verify_complex_spr(int instances, Eigen::Index dim, const NormSpec& norm, std::uint64_t seed);

}  // namespace sprlat
