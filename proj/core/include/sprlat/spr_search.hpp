#pragma once

// Numerical searches over a finite-dimensional subspace E of a coordinate
// lattice: lower bounds for the stable phase retrieval constant, and
// almost-disjoint / almost-perpendicular witness pairs.
//
// Every search is a seeded multi-start derivative-free local search.
// Results are one-sided: a witness is a certificate, failing to find one
// under a budget is not.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sprlat/lattice.hpp"
#include "sprlat/phase_distance.hpp"

namespace sprlat {

inline constexpr double kUnboundedRatio = 1e9;
inline constexpr double kDefaultFailPerp = 1e-6;

struct Subspace {
  Ambient ambient;
  std::vector<CplxVec> basis;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(basis.size()); }
  /// Real parameters describing one coefficient vector: k or 2k.
  Eigen::Index coefficient_params() const;
  /// e(a) = sum_j a_j basis_j, with a read from real parameters
  /// (interleaved re/im for the complex field).
  CplxVec element(const Eigen::Ref<const Eigen::VectorXd>& params) const;
  /// Sizes, finiteness, real entries for a real field, and linear independence.
  void validate() const;
};

struct SearchBudget {
  int restarts = 20;
  int iterations = 400;  // Nelder-Mead iterations per restart and round
  int penalty_rounds = 4;
};

struct PairWitness {
  CplxVec u, v;
  double separation = 0.0;    // min_{|lambda|=1} ||u - lambda v||
  double disjointness = 0.0;  // || |u| ^ |v| ||
  double perp = 0.0;          // || |Re u conj(v)|^(1/2) ||
};

/// Normalizes nothing; recomputes all three measures from scratch.
PairWitness measure_pair(const CplxVec& u, const CplxVec& v, const Ambient& ambient);

struct SPREstimate {
  double c_lower = 1.0;
  bool unbounded = false;
  RatioReport report;  // of the witness (f, g)
  CplxVec f, g;
  int evaluations = 0;
  int restarts_run = 0;
  std::uint64_t seed = 0;
};

/// Maximizes the stability ratio over pairs (e(a), e(b)), (a, b) on the unit
/// sphere of the joint coefficient space. The best ratio found is a lower
/// bound for the optimal constant; `unbounded` is set when the ratio passes
/// 1e9 or a pair with |f| = |g| but f !~ g turns up.
SPREstimate estimate_spr_constant(const Subspace& E, const SearchBudget& budget, std::uint64_t seed);

/// Minimizes || |u| ^ |v| || over normalized pairs of E.
PairWitness search_almost_disjoint(const Subspace& E, const SearchBudget& budget, std::uint64_t seed);

struct PerpSearchResult {
  PairWitness witness;
  bool feasible = false;  // some pair with separation >= m was seen
  double m = 0.0;
  int evaluations = 0;
};

/// Minimizes perp(u, v) over normalized pairs with separation >= m, using an
/// exterior penalty rho * max(0, m - separation)^2 escalated over
/// budget.penalty_rounds. Only pairs measured feasible are ever returned.
PerpSearchResult search_perp_pair(const Subspace& E, double m, const SearchBudget& budget, std::uint64_t seed);

enum class PRVerdictKind { fails_with_witness, passes_up_to_budget };

std::string to_string(PRVerdictKind kind);

/// One-sided phase retrieval test: `passes_up_to_budget` only means no
/// separated almost-perpendicular pair was found within the budget.
struct PRVerdict {
  PRVerdictKind kind = PRVerdictKind::passes_up_to_budget;
  double eps_fail = kDefaultFailPerp;
  std::vector<double> m_grid;
  std::vector<double> min_perp;  // per m; +inf when infeasible
  std::vector<bool> feasible;
  std::optional<PairWitness> witness;
  std::optional<double> witness_m;
};

inline const std::vector<double> kDefaultMGrid{0.05, 0.1, 0.2};

PRVerdict check_pr(const Subspace& E, std::span<const double> m_grid, const SearchBudget& budget, std::uint64_t seed,
                   double eps_fail = kDefaultFailPerp);

/// splitmix64 mixing, for deriving independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace sprlat
