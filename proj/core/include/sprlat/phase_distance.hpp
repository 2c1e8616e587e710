#pragma once

// The quotient phase metric d([f], [g]) = min_{|lambda| = 1} ||f - lambda g||
// and the stability ratio d([f], [g]) / || |f| - |g| ||.

#include <string>

#include "sprlat/lattice.hpp"

namespace sprlat {

inline constexpr double kDefaultPhaseTolerance = 1e-10;
inline constexpr int kPhaseGridPoints = 512;

struct PhaseAlignment {
  double distance = 0.0;
  Complex lambda_star{1.0, 0.0};  // unimodular; +-1 over the reals
};

/// Global minimum of ||f - lambda g|| over unimodular lambda.
///
/// Over the reals lambda ranges over {+1, -1}. Over the complex field the
/// Euclidean (p = 2) case uses the closed form lambda* = <f,g>/|<f,g>|;
/// every other norm goes through unimodular_distance_search().
PhaseAlignment unimodular_distance(const CplxVec& f, const CplxVec& g, const NormSpec& norm,
                                   Field field = Field::complex, double tol = kDefaultPhaseTolerance);

/// Generic route for any lattice norm: a 512-point theta grid screened with
/// the Lipschitz bound |d/dtheta ||f - e^{i theta} g||| <= ||g||, then
/// golden-section refinement of every bracket that could still hold the
/// global minimum. Exposed separately so it can be checked against the
/// closed form.
PhaseAlignment unimodular_distance_search(const CplxVec& f, const CplxVec& g, const NormSpec& norm,
                                          double tol = kDefaultPhaseTolerance);

/// Closed form for p = 2 (any positive weights).
PhaseAlignment unimodular_distance_euclidean(const CplxVec& f, const CplxVec& g, const NormSpec& norm);

enum class RatioFlag { finite, infinite, degenerate };

std::string to_string(RatioFlag flag);

struct RatioReport {
  double numerator = 0.0;    // phase distance
  double denominator = 0.0;  // || |f| - |g| ||
  double ratio = 0.0;        // +inf when infinite, NaN when degenerate
  RatioFlag flag = RatioFlag::finite;
  Complex lambda_star{1.0, 0.0};
};

/// Scale-aware zero threshold 1e-9 * max(||f||, ||g||, 1).
double zero_tolerance(const CplxVec& f, const CplxVec& g, const NormSpec& norm);

RatioReport spr_ratio(const CplxVec& f, const CplxVec& g, const NormSpec& norm, Field field = Field::complex);

}  // namespace sprlat
