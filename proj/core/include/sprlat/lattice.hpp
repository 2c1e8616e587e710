#pragma once

// Coordinate Banach lattices R^n and their complexifications C^n.
//
// The order is pointwise, so every lattice expression (meet, join, modulus,
// |fg|^(1/2), |Re f conj(g)|^(1/2), ...) is evaluated coordinate by
// coordinate. Norms are weighted p-norms of the modulus, which makes them
// lattice norms: |x| <= |y| pointwise implies ||x|| <= ||y||.

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sprlat {

using Complex = std::complex<double>;
using RealVec = Eigen::VectorXd;
using CplxVec = Eigen::VectorXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Field { real, complex };

std::string to_string(Field field);
Field field_from_string(const std::string& name);

/// Weighted p-norm (sum_i w_i |x_i|^p)^(1/p), or max_i w_i |x_i| for p = inf.
struct NormSpec {
  double p = 2.0;
  std::vector<double> weights;  // empty means all ones

  static NormSpec lp(double p) { return NormSpec{p, {}}; }
  static NormSpec sup() { return NormSpec{kInf, {}}; }

  bool is_sup() const { return p == kInf; }
  bool unit_weights() const { return weights.empty(); }
  double weight(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }

  /// Throws PreconditionError unless 1 <= p <= inf and weights are positive,
  /// finite and (when dim > 0) of length dim.
  void validate(std::size_t dim = 0) const;
};

/// The ambient lattice X in which a subspace sits.
struct Ambient {
  std::size_t dim = 1;
  Field field = Field::complex;
  NormSpec norm;

  void validate() const;
};

// Real lattice operations. All throw DimensionMismatch on unequal sizes.
RealVec meet(const RealVec& x, const RealVec& y);
RealVec join(const RealVec& x, const RealVec& y);
RealVec abs_real(const RealVec& x);

/// |z| = sqrt(re^2 + im^2) coordinatewise.
RealVec modulus(const CplxVec& z);

/// |xy|^(1/2) coordinatewise.
RealVec abs_prod_sqrt(const RealVec& x, const RealVec& y);

/// Re(f conj(g)) = Re f Re g + Im f Im g, coordinatewise.
RealVec re_prod(const CplxVec& f, const CplxVec& g);

/// |Re(f conj(g))|^(1/2) coordinatewise.
RealVec perp_profile(const CplxVec& f, const CplxVec& g);

/// ||perp_profile(f, g)||: zero exactly for perpendicular pairs.
double perp_measure(const CplxVec& f, const CplxVec& g, const NormSpec& norm);

/// Lattice norm of a nonnegative profile (the modulus of some vector).
double lattice_norm(const RealVec& nonneg, const NormSpec& norm);

double norm(const RealVec& x, const NormSpec& norm);
double norm(const CplxVec& x, const NormSpec& norm);

/// || |f| ^ |g| ||, the almost-disjointness measure of a pair.
double disjointness(const CplxVec& f, const CplxVec& g, const NormSpec& norm);

/// || |f| - |g| ||, the right-hand side of the stability inequality.
double modulus_gap(const CplxVec& f, const CplxVec& g, const NormSpec& norm);

CplxVec complexify(const RealVec& x);

bool all_finite(const CplxVec& z);

void require_same_size(Eigen::Index a, Eigen::Index b, const char* where);

}  // namespace sprlat
