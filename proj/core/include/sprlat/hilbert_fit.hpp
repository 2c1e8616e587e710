#pragma once

// Hilbert norms on two-dimensional spans Y = span{f, g} that are
// K-equivalent to the lattice norm, and the orthogonal reduction of a pair
// inside such a span.
//
// Convention: ||h||  <=  ||h||_H  <=  K ||h||  on Y, with the lower bound
// attained. Inner products are linear in the first slot.

#include <cstdint>
#include <numbers>

#include <Eigen/Core>

#include "sprlat/lattice.hpp"

namespace sprlat {

inline constexpr double kMaxHilbertDistortion = std::numbers::sqrt2 + 0.05;

/// 1 - |<f,g>|^2 / (||f||^2 ||g||^2) in the Euclidean structure of the
/// coordinates: 0 for dependent vectors, 1 for orthogonal ones. Over the real
/// field only real multiples count, which for real f, g is the same number.
double independence(const CplxVec& f, const CplxVec& g);

inline constexpr double kIndependenceFloor = 1e-12;

struct HilbertForm {
  CplxVec f, g;
  /// ||a f + b g||_H^2 = c^H gram c for coefficients c = (a, b).
  Eigen::Matrix2cd gram = Eigen::Matrix2cd::Identity();
  double distortion_K = 1.0;
  Field field = Field::complex;
  NormSpec norm;

  CplxVec combine(const Eigen::Vector2cd& c) const;
  /// Coefficients of x in the basis (f, g); throws PreconditionError when x
  /// is not in the span (relative least-squares residual above 1e-8).
  Eigen::Vector2cd coefficients(const CplxVec& x) const;
  double span_residual(const CplxVec& x) const;

  Complex inner_coeff(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y) const;
  double norm_coeff(const Eigen::Vector2cd& c) const;
  Complex inner(const CplxVec& x, const CplxVec& y) const;
  double hnorm(const CplxVec& x) const;
};

struct FitOptions {
  int sphere_samples = 2048;
  /// Number of best sampled points refined to locate the exact extremes.
  int refine_candidates = 12;
  /// Rounds that add the refined extremes to the samples and refit.
  int exchange_rounds = 16;
  double acceptance = kMaxHilbertDistortion;
};

/// Sampled extremes of ||h||_H / ||h|| over the unit sphere of Y, each
/// refined by a local search from the best samples.
struct DistortionProfile {
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  double distortion() const { return max_ratio / min_ratio; }
};

DistortionProfile measure_distortion(const HilbertForm& form, int sphere_samples = 2048, int refine_candidates = 12);

/// Fits a Hermitian positive-definite form on span{f, g} minimizing the
/// measured distortion, then rescales it so the lower sandwich bound is
/// tight. Throws PreconditionError for dependent inputs and FitFailure when
/// the best distortion exceeds options.acceptance.
HilbertForm fit_hilbert_norm(const CplxVec& f, const CplxVec& g, const NormSpec& norm, Field field = Field::complex,
                             const FitOptions& options = {});

struct AlignedPair {
  CplxVec f, g;  // f = u + mu v, g = u - mu v
  Complex mu{1.0, 0.0};
  /// True when ||u||_H < ||v||_H and the roles of u and v were exchanged.
  bool swapped = false;
  double inner_fg = 0.0;  // <f, g>_H = ||u||_H^2 - ||v||_H^2 >= 0
};

/// mu = <u,v>_H / |<u,v>_H| (1 if they are H-orthogonal). Makes <f,g>_H real
/// and nonnegative.
AlignedPair align_pair(const CplxVec& u, const CplxVec& v, const HilbertForm& form);

struct ReductionResult {
  CplxVec f_prime, g_prime;
  Complex mu{1.0, 0.0};
  double R = 0.0;
  bool swapped = false;
  double inner_before = 0.0;
  /// |<f', g'>_H| / (||f'||_H ||g'||_H).
  double orthogonality_residual = 0.0;
};

/// f' = f - R(f+g), g' = g - R(f+g) with R in [0, 1/2] the smaller root of
/// S R^2 - S R + <f,g>_H = 0, S = ||f+g||_H^2. Requires <f,g>_H real and
/// nonnegative. Verifies H-orthogonality, | |f'| - |g'| | <= | |f| - |g| |
/// pointwise and f' - g' = f - g before returning.
ReductionResult orthogonal_reduce(const CplxVec& f, const CplxVec& g, const HilbertForm& form);

/// align_pair followed by orthogonal_reduce.
ReductionResult align_and_reduce(const CplxVec& u, const CplxVec& v, const HilbertForm& form);

}  // namespace sprlat
