#include "sprlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sprlat/errors.hpp"

namespace sprlat {

std::string to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field field_from_string(const std::string& name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw PreconditionError("field must be \"real\" or \"complex\", got \"" + name + "\"");
}

void NormSpec::validate(std::size_t dim) const {
  if (!(p >= 1.0)) {  // also rejects NaN
    throw PreconditionError("norm exponent p must satisfy 1 <= p <= inf");
  }
  if (!weights.empty() && dim != 0 && weights.size() != dim) {
    std::ostringstream msg;
    msg << "norm has " << weights.size() << " weights but dimension is " << dim;
    throw DimensionMismatch(msg.str());
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw PreconditionError("norm weights must be finite and strictly positive");
    }
  }
}

void Ambient::validate() const {
  if (dim < 1) throw PreconditionError("ambient dimension must be at least 1");
  norm.validate(dim);
}

void require_same_size(Eigen::Index a, Eigen::Index b, const char* where) {
  if (a != b) {
    std::ostringstream msg;
    msg << where << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionMismatch(msg.str());
  }
}

RealVec meet(const RealVec& x, const RealVec& y) {
  require_same_size(x.size(), y.size(), "meet");
  return x.cwiseMin(y);
}

RealVec join(const RealVec& x, const RealVec& y) {
  require_same_size(x.size(), y.size(), "join");
  return x.cwiseMax(y);
}

RealVec abs_real(const RealVec& x) { return x.cwiseAbs(); }

RealVec modulus(const CplxVec& z) {
  RealVec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = std::hypot(z[i].real(), z[i].imag());
  return out;
}

RealVec abs_prod_sqrt(const RealVec& x, const RealVec& y) {
  require_same_size(x.size(), y.size(), "abs_prod_sqrt");
  RealVec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = std::sqrt(std::abs(x[i])) * std::sqrt(std::abs(y[i]));
  return out;
}

RealVec re_prod(const CplxVec& f, const CplxVec& g) {
  require_same_size(f.size(), g.size(), "re_prod");
  RealVec out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    out[i] = f[i].real() * g[i].real() + f[i].imag() * g[i].imag();
  }
  return out;
}

RealVec perp_profile(const CplxVec& f, const CplxVec& g) {
  return re_prod(f, g).cwiseAbs().cwiseSqrt();
}

double perp_measure(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  return lattice_norm(perp_profile(f, g), spec);
}

double lattice_norm(const RealVec& x, const NormSpec& spec) {
  if (!spec.weights.empty()) {
    require_same_size(static_cast<Eigen::Index>(spec.weights.size()), x.size(), "norm weights");
  }
  const Eigen::Index n = x.size();
  if (spec.is_sup()) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) m = std::max(m, spec.weight(i) * std::abs(x[i]));
    return m;
  }
  // Scale by the largest entry so that |x_i|^p neither overflows nor underflows.
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(x[i]));
  if (scale == 0.0) return 0.0;
  const double p = spec.p;
  double sum = 0.0;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) sum += spec.weight(i) * std::abs(x[i]);
    return sum;
  }
  if (p == 2.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = x[i] / scale;
      sum += spec.weight(i) * t * t;
    }
    return scale * std::sqrt(sum);
  }
  for (Eigen::Index i = 0; i < n; ++i) sum += spec.weight(i) * std::pow(std::abs(x[i]) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

double norm(const RealVec& x, const NormSpec& spec) { return lattice_norm(x, spec); }

double norm(const CplxVec& x, const NormSpec& spec) { return lattice_norm(modulus(x), spec); }

double disjointness(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  return lattice_norm(meet(modulus(f), modulus(g)), spec);
}

double modulus_gap(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  require_same_size(f.size(), g.size(), "modulus_gap");
  return lattice_norm((modulus(f) - modulus(g)).cwiseAbs(), spec);
}

CplxVec complexify(const RealVec& x) { return x.cast<Complex>(); }

bool all_finite(const CplxVec& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) return false;
  }
  return true;
}

}  // namespace sprlat
