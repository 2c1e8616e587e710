#pragma once

// Constructive maps between the obstructions to (stable) phase retrieval:
//
//   disjoint pair                 -> pair with equal moduli (PR failure)
//   almost disjoint pair          -> pair violating SPR with constant 1/(sqrt2 eps)
//   pair violating C-SPR          -> separated almost perpendicular pair
//   separated almost perp. pair   -> pair violating C-SPR
//
// Each builder measures its hypotheses instead of trusting the caller and
// re-measures its guarantees on the output; a guarantee that fails to hold
// raises InvariantViolation.

#include <numbers>

#include "sprlat/hilbert_fit.hpp"
#include "sprlat/lattice.hpp"
#include "sprlat/phase_distance.hpp"
#include "sprlat/spr_search.hpp"

namespace sprlat {

/// Upper end of the admissible separation parameter: 1/sqrt2 - 1/2.
inline constexpr double kMaxSeparation = std::numbers::sqrt2 / 2.0 - 0.5;
/// Strict "C >" thresholds are enforced as C >= kStrictMargin * bound.
inline constexpr double kStrictMargin = 1.01;
inline constexpr double kBuilderTolerance = 1e-8;

/// Separation guaranteed for a given theta:
/// (1-theta)/sqrt2 + sqrt(1 + (1-theta)^2) / (2 sqrt2) - 1. Strictly
/// decreasing on [0, 1], from kMaxSeparation down to a negative value.
double separation_for_theta(double theta);

/// Inverse of separation_for_theta on (0, 1) by bisection to 1e-12.
double theta_for_separation(double m);

/// delta = (1 + (1 + m/2)^2)^(-1/2), so that sqrt(1 - delta^2)/delta = 1 + m/2.
double delta_for_separation(double m);

struct BuilderParams {
  double m = 0.1;
  double epsilon = 0.05;
  double theta = 0.0;
  double delta = 0.0;
  /// kStrictMargin * max{8 sqrt2 / ((1 + (1-theta)^2) eps^2), 2 sqrt2 / theta}.
  double C_required = 0.0;

  /// Throws PreconditionError unless 0 < m < kMaxSeparation and eps > 0.
  static BuilderParams make(double m, double epsilon);
};

struct PrFailurePair {
  CplxVec F, G;  // F = f + g, G = f - g, |F| = |G|
};

/// f, g nonzero with |f| ^ |g| = 0.
PrFailurePair disjoint_to_pr_failure(const CplxVec& f, const CplxVec& g, const NormSpec& norm);

struct SprViolation {
  CplxVec f_prime, g_prime;
  double eps_prime = 0.0;     // || |u| ^ |v| ||
  double separation = 0.0;    // min ||f' - lambda g'||
  double modulus_gap = 0.0;   // || |f'| - |g'| ||
  double certified_ratio = 0.0;
  RatioFlag flag = RatioFlag::finite;
  double distortion_K = 1.0;
  double R = 0.0;
  Complex mu{1.0, 0.0};
  bool swapped = false;
};

/// Normalized u, v with eps' = || |u| ^ |v| || < 1: fit a Hilbert norm on
/// span{u, v}, align, reduce. Guarantees || |f'| - |g'| || <= 2 eps' and
/// min ||f' - lambda g'|| >= sqrt2, so the ratio exceeds 1/(sqrt2 eps').
SprViolation adp_to_spr_violation(const CplxVec& u, const CplxVec& v, const NormSpec& norm,
                                  const FitOptions& fit = {});

struct PerpConstruction {
  PairWitness witness;  // normalized u, v
  BuilderParams params;
  RatioReport input_ratio;
  double g_prime_norm = 1.0;
  /// ||g'|| < 1 - theta: the ratio hypothesis barely held and the separation
  /// guarantee is no longer implied.
  bool marginal = false;
  double distortion_K = 1.0;
};

/// From a pair whose stability ratio exceeds C_required(m, eps) (or is
/// infinite), builds normalized u, v with separation >= m and perp < eps.
PerpConstruction spr_failure_to_perp_pair(const CplxVec& f, const CplxVec& g, const NormSpec& norm, double m,
                                          double epsilon, const FitOptions& fit = {});

struct SprFailure {
  CplxVec f, g;  // u + v, u - v
  RatioReport ratio;
  double perp = 0.0;
  double perp_threshold = 0.0;  // delta m / (2C)
  double delta = 0.0;
  /// Sampled min of ||alpha u + beta v|| over |alpha|^2 + |beta|^2 = 1.
  double M_sampled = 0.0;
};

/// From normalized u, v with separation >= m and perp < delta m / (2C),
/// builds f, g with min ||f - lambda g|| > C || |f| - |g| ||.
SprFailure perp_pair_to_spr_failure(const CplxVec& u, const CplxVec& v, const NormSpec& norm, double m, double C);

/// The four equivalent phase retrieval failure conditions for a pair, each
/// decided on its own residual (all scaled by max(|f|, |g|, 1)^2):
///   moduli_equal:  u = f+g, v = f-g satisfy |u| = |v|
///   sum_difference: |f - g| = |f + g|
///   perpendicular:  |Re f conj(g)|^(1/2) = 0
///   pythagorean:    |f + g| = (|f|^2 + |g|^2)^(1/2)
struct PrEquivalences {
  bool moduli_equal = false;
  bool sum_difference = false;
  bool perpendicular = false;
  bool pythagorean = false;
  double residuals[4] = {0, 0, 0, 0};

  bool all_true() const { return moduli_equal && sum_difference && perpendicular && pythagorean; }
  bool all_false() const { return !moduli_equal && !sum_difference && !perpendicular && !pythagorean; }
  bool agree() const { return all_true() || all_false(); }
};

/// Throws PreconditionError for dependent inputs and InvariantViolation when
/// the four conditions disagree.
PrEquivalences complex_pr_equivalences(const CplxVec& f, const CplxVec& g, double atol = 1e-9);

}  // namespace sprlat
