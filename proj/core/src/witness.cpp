#include "sprlat/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sprlat/errors.hpp"
#include "sprlat/sampling.hpp"

namespace sprlat {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_normalized(const CplxVec& x, const NormSpec& spec, const char* name, const char* where) {
  const double n = norm(x, spec);
  if (std::abs(n - 1.0) > kBuilderTolerance) {
    std::ostringstream msg;
    msg << where << ": " << name << " must be normalized, ||" << name << "|| = " << n;
    throw PreconditionError(msg.str());
  }
}

void require_independent(const CplxVec& f, const CplxVec& g, const char* where) {
  if (independence(f, g) <= kIndependenceFloor) {
    throw PreconditionError(std::string(where) + ": inputs are linearly dependent");
  }
}

[[noreturn]] void violated(const char* where, const std::string& what, double lhs, double rhs) {
  std::ostringstream msg;
  msg.precision(12);
  msg << where << ": " << what << " (" << lhs << " vs " << rhs << ")";
  throw InvariantViolation(msg.str());
}

}  // namespace

double separation_for_theta(double theta) {
  const double s = 1.0 - theta;
  return s / kSqrt2 + std::sqrt(1.0 + s * s) / (2.0 * kSqrt2) - 1.0;
}

double theta_for_separation(double m) {
  if (!(m > 0.0 && m < kMaxSeparation)) {
    std::ostringstream msg;
    msg << "separation parameter m must lie in (0, " << kMaxSeparation << "), got " << m;
    throw PreconditionError(msg.str());
  }
  double lo = 0.0;  // separation_for_theta(lo) > m
  double hi = 1.0;  // separation_for_theta(hi) < m
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (separation_for_theta(mid) > m) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double delta_for_separation(double m) {
  const double t = 1.0 + 0.5 * m;
  return 1.0 / std::sqrt(1.0 + t * t);
}

BuilderParams BuilderParams::make(double m, double epsilon) {
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  BuilderParams p;
  p.m = m;
  p.epsilon = epsilon;
  p.theta = theta_for_separation(m);
  p.delta = delta_for_separation(m);
  const double s = 1.0 - p.theta;
  p.C_required = kStrictMargin * std::max(8.0 * kSqrt2 / ((1.0 + s * s) * epsilon * epsilon), 2.0 * kSqrt2 / p.theta);
  return p;
}

PrFailurePair disjoint_to_pr_failure(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  require_same_size(f.size(), g.size(), "disjoint_to_pr_failure");
  const double atol = zero_tolerance(f, g, spec);
  if (norm(f, spec) <= atol || norm(g, spec) <= atol) {
    throw PreconditionError("disjoint_to_pr_failure: inputs must be nonzero");
  }
  const double overlap = disjointness(f, g, spec);
  if (overlap > atol) {
    std::ostringstream msg;
    msg << "disjoint_to_pr_failure: inputs are not disjoint, || |f| ^ |g| || = " << overlap;
    throw PreconditionError(msg.str());
  }
  PrFailurePair out{f + g, f - g};
  const double gap = (modulus(out.F) - modulus(out.G)).cwiseAbs().maxCoeff();
  const double scale = std::max({1.0, f.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff()});
  if (gap > 1e-12 * scale) violated("disjoint_to_pr_failure", "|f+g| != |f-g|", gap, 0.0);
  if (independence(out.F, out.G) <= kIndependenceFloor) {
    throw InvariantViolation("disjoint_to_pr_failure: f+g and f-g came out dependent");
  }
  return out;
}

SprViolation adp_to_spr_violation(const CplxVec& u, const CplxVec& v, const NormSpec& spec, const FitOptions& fit) {
  constexpr const char* where = "adp_to_spr_violation";
  require_same_size(u.size(), v.size(), where);
  require_normalized(u, spec, "u", where);
  require_normalized(v, spec, "v", where);
  SprViolation out;
  out.eps_prime = disjointness(u, v, spec);
  if (!(out.eps_prime < 1.0)) {
    throw PreconditionError("adp_to_spr_violation: || |u| ^ |v| || must be < 1");
  }
  require_independent(u, v, where);

  const HilbertForm form = fit_hilbert_norm(u, v, spec, Field::complex, fit);
  const ReductionResult red = align_and_reduce(u, v, form);
  out.f_prime = red.f_prime;
  out.g_prime = red.g_prime;
  out.R = red.R;
  out.mu = red.mu;
  out.swapped = red.swapped;
  out.distortion_K = form.distortion_K;

  const RatioReport ratio = spr_ratio(out.f_prime, out.g_prime, spec, Field::complex);
  out.separation = ratio.numerator;
  out.modulus_gap = ratio.denominator;
  out.flag = ratio.flag;
  out.certified_ratio = ratio.ratio;

  if (out.modulus_gap > 2.0 * out.eps_prime + kBuilderTolerance) {
    violated(where, "|| |f'| - |g'| || > 2 eps'", out.modulus_gap, 2.0 * out.eps_prime);
  }
  if (out.separation < kSqrt2 - kBuilderTolerance) {
    violated(where, "min ||f' - lambda g'|| < sqrt2", out.separation, kSqrt2);
  }
  if (ratio.flag == RatioFlag::degenerate) violated(where, "degenerate output pair", 0.0, 0.0);
  return out;
}

PerpConstruction spr_failure_to_perp_pair(const CplxVec& f, const CplxVec& g, const NormSpec& spec, double m,
                                          double epsilon, const FitOptions& fit) {
  constexpr const char* where = "spr_failure_to_perp_pair";
  require_same_size(f.size(), g.size(), where);
  PerpConstruction out;
  out.params = BuilderParams::make(m, epsilon);
  out.input_ratio = spr_ratio(f, g, spec, Field::complex);
  const bool hypothesis = out.input_ratio.flag == RatioFlag::infinite ||
                          (out.input_ratio.flag == RatioFlag::finite && out.input_ratio.ratio > out.params.C_required);
  if (!hypothesis) {
    std::ostringstream msg;
    msg << where << ": the pair does not violate SPR strongly enough: measured ratio " << out.input_ratio.ratio
        << " (" << to_string(out.input_ratio.flag) << "), required > " << out.params.C_required;
    throw PreconditionError(msg.str());
  }
  require_independent(f, g, where);

  const HilbertForm form = fit_hilbert_norm(f, g, spec, Field::complex, fit);
  out.distortion_K = form.distortion_K;
  // Rotate g so that <f, g>_H >= 0; neither |g| nor the phase distance changes.
  const Complex fg = form.inner(f, g);
  const Complex phase = std::abs(fg) > 0.0 ? fg / std::abs(fg) : Complex{1.0, 0.0};
  const ReductionResult red = orthogonal_reduce(f, CplxVec(phase * g), form);

  CplxVec fp = red.f_prime;
  CplxVec gp = red.g_prime;
  double nf = norm(fp, spec);
  double ng = norm(gp, spec);
  if (ng > nf) {
    std::swap(fp, gp);
    std::swap(nf, ng);
  }
  fp /= nf;
  gp /= nf;
  out.g_prime_norm = ng / nf;
  out.marginal = out.g_prime_norm < 1.0 - out.params.theta;

  CplxVec u = 0.5 * (fp + gp);
  CplxVec v = 0.5 * (fp - gp);
  u /= norm(u, spec);
  v /= norm(v, spec);
  out.witness = measure_pair(u, v, Ambient{static_cast<std::size_t>(u.size()), Field::complex, spec});

  const std::string note = out.marginal ? " [marginal: ||g'|| < 1 - theta]" : "";
  if (out.witness.separation < m - kBuilderTolerance) {
    violated(where, "separation below m" + note, out.witness.separation, m);
  }
  if (!(out.witness.perp < epsilon)) violated(where, "perp not below epsilon" + note, out.witness.perp, epsilon);
  return out;
}

SprFailure perp_pair_to_spr_failure(const CplxVec& u, const CplxVec& v, const NormSpec& spec, double m, double C) {
  constexpr const char* where = "perp_pair_to_spr_failure";
  require_same_size(u.size(), v.size(), where);
  if (!(m > 0.0)) throw PreconditionError("perp_pair_to_spr_failure: m must be positive");
  if (!(C > 0.0)) throw PreconditionError("perp_pair_to_spr_failure: C must be positive");
  require_normalized(u, spec, "u", where);
  require_normalized(v, spec, "v", where);

  SprFailure out;
  out.delta = delta_for_separation(m);
  out.perp_threshold = out.delta * m / (2.0 * C);
  out.perp = perp_measure(u, v, spec);
  const double separation = unimodular_distance(u, v, spec, Field::complex).distance;
  if (separation < m - kBuilderTolerance) {
    std::ostringstream msg;
    msg << where << ": separation bound fails: min ||u - lambda v|| = " << separation << " < m = " << m
        << " (short by " << m - separation << ")";
    throw PreconditionError(msg.str());
  }
  if (!(out.perp < out.perp_threshold)) {
    std::ostringstream msg;
    msg << where << ": perpendicularity bound fails: perp = " << out.perp << " is not < delta m / (2C) = "
        << out.perp_threshold << " (excess " << out.perp - out.perp_threshold << ")";
    throw PreconditionError(msg.str());
  }

  out.f = u + v;
  out.g = u - v;
  out.ratio = spr_ratio(out.f, out.g, spec, Field::complex);
  if (out.ratio.denominator > 2.0 * out.perp + kBuilderTolerance) {
    violated(where, "|| |f| - |g| || > 2 perp(u, v)", out.ratio.denominator, 2.0 * out.perp);
  }

  out.M_sampled = kInf;
  for (const auto& c : coefficient_sphere(4096, Field::complex)) {
    out.M_sampled = std::min(out.M_sampled, norm(CplxVec(c[0] * u + c[1] * v), spec));
  }
  if (out.M_sampled < 0.5 * out.delta * m - kBuilderTolerance) {
    violated(where, "sampled M below delta m / 2", out.M_sampled, 0.5 * out.delta * m);
  }

  const bool exceeds = out.ratio.flag == RatioFlag::infinite || (out.ratio.flag == RatioFlag::finite && out.ratio.ratio > C);
  if (!exceeds) violated(where, "measured ratio does not exceed C", out.ratio.ratio, C);
  return out;
}

PrEquivalences complex_pr_equivalences(const CplxVec& f, const CplxVec& g, double atol) {
  require_same_size(f.size(), g.size(), "complex_pr_equivalences");
  require_independent(f, g, "complex_pr_equivalences");
  if (!(atol > 0.0)) throw PreconditionError("complex_pr_equivalences: atol must be positive");

  const double scale = std::max({1.0, f.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff()});
  const double threshold = atol * scale * scale;

  const CplxVec u = f + g;
  const CplxVec v = f - g;
  const RealVec mu = modulus(u);
  const RealVec mv = modulus(v);
  const RealVec mf = modulus(f);
  const RealVec mg = modulus(g);
  const RealVec rp = re_prod(f, g);

  PrEquivalences out;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    out.residuals[0] = std::max(out.residuals[0], std::abs(mu[i] - mv[i]) * (mu[i] + mv[i]));
    out.residuals[1] = std::max(out.residuals[1], std::abs(mv[i] * mv[i] - mu[i] * mu[i]));
    out.residuals[2] = std::max(out.residuals[2], 4.0 * std::abs(rp[i]));
    out.residuals[3] = std::max(out.residuals[3], 2.0 * std::abs(mu[i] * mu[i] - (mf[i] * mf[i] + mg[i] * mg[i])));
  }
  out.moduli_equal = out.residuals[0] <= threshold;
  out.sum_difference = out.residuals[1] <= threshold;
  out.perpendicular = out.residuals[2] <= threshold;
  out.pythagorean = out.residuals[3] <= threshold;
  if (!out.agree()) {
    std::ostringstream msg;
    msg << "complex_pr_equivalences: conditions disagree (residuals " << out.residuals[0] << ", " << out.residuals[1]
        << ", " << out.residuals[2] << ", " << out.residuals[3] << "; threshold " << threshold << ")";
    throw InvariantViolation(msg.str());
  }
  return out;
}

}  // namespace sprlat
