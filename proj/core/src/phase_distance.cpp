#include "sprlat/phase_distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "sprlat/errors.hpp"
#include "sprlat/optimize.hpp"

namespace sprlat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TrigTable {
  Eigen::ArrayXd cos_t = Eigen::ArrayXd(kPhaseGridPoints);
  Eigen::ArrayXd sin_t = Eigen::ArrayXd(kPhaseGridPoints);
  TrigTable() {
    for (int k = 0; k < kPhaseGridPoints; ++k) {
      const double t = kTwoPi * k / kPhaseGridPoints;
      cos_t[k] = std::cos(t);
      sin_t[k] = std::sin(t);
    }
  }
};

const TrigTable& trig_table() {
  static const TrigTable table;
  return table;
}

void check_inputs(const CplxVec& f, const CplxVec& g, const NormSpec& spec, const char* where) {
  require_same_size(f.size(), g.size(), where);
  if (!spec.weights.empty()) require_same_size(static_cast<Eigen::Index>(spec.weights.size()), f.size(), where);
}

// ||f - e^{it} g|| without temporaries.
double direct_distance(const CplxVec& f, const CplxVec& g, const NormSpec& spec, double theta) {
  const Complex lambda = std::polar(1.0, theta);
  const double p = spec.p;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i] - lambda * g[i]);
    const double w = spec.weight(static_cast<std::size_t>(i));
    if (spec.is_sup()) {
      acc = std::max(acc, w * m);
    } else if (p == 1.0) {
      acc += w * m;
    } else if (p == 2.0) {
      acc += w * m * m;
    } else {
      acc += w * std::pow(m, p);
    }
  }
  if (spec.is_sup() || p == 1.0) return acc;
  if (p == 2.0) return std::sqrt(acc);
  return std::pow(acc, 1.0 / p);
}

// Grid screening uses |f_i - e^{it} g_i|^2 = a_i - 2 Re(e^{-it} b_i), with
// a = |f|^2 + |g|^2 and b = f conj(g). Cheap, but loses accuracy where
// f_i ~ e^{it} g_i, so it only ranks brackets; reported values are direct.
Eigen::ArrayXd screening_profile(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  const auto& trig = trig_table();
  const double p = spec.p;
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(kPhaseGridPoints);
  Eigen::ArrayXd sq(kPhaseGridPoints);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double a = std::norm(f[i]) + std::norm(g[i]);
    const Complex b = f[i] * std::conj(g[i]);
    sq = (a - 2.0 * (b.real() * trig.cos_t + b.imag() * trig.sin_t)).max(0.0);
    const double w = spec.weight(static_cast<std::size_t>(i));
    if (spec.is_sup()) {
      acc = acc.max(w * w * sq);
    } else if (p == 2.0) {
      acc += w * sq;
    } else if (p == 1.0) {
      acc += w * sq.sqrt();
    } else if (p == 3.0) {
      acc += w * sq * sq.sqrt();
    } else {
      acc += w * sq.pow(0.5 * p);
    }
  }
  if (spec.is_sup() || p == 2.0) return acc.sqrt();
  if (p == 1.0) return acc;
  return acc.pow(1.0 / p);
}

}  // namespace

std::string to_string(RatioFlag flag) {
  switch (flag) {
    case RatioFlag::finite: return "finite";
    case RatioFlag::infinite: return "infinite";
    case RatioFlag::degenerate: return "degenerate";
  }
  return "finite";
}

PhaseAlignment unimodular_distance_euclidean(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  check_inputs(f, g, spec, "unimodular_distance");
  if (spec.p != 2.0) throw PreconditionError("closed-form phase distance requires p = 2");
  Complex inner{0.0, 0.0};
  for (Eigen::Index i = 0; i < f.size(); ++i) inner += spec.weight(i) * f[i] * std::conj(g[i]);
  const double mag = std::abs(inner);
  PhaseAlignment out;
  out.lambda_star = mag > 0.0 ? inner / mag : Complex{1.0, 0.0};
  // Evaluate at lambda* directly instead of through ||f||^2 + ||g||^2 - 2|<f,g>|,
  // which cancels catastrophically when f ~ g.
  out.distance = norm(CplxVec(f - out.lambda_star * g), spec);
  return out;
}

PhaseAlignment unimodular_distance_search(const CplxVec& f, const CplxVec& g, const NormSpec& spec, double tol) {
  check_inputs(f, g, spec, "unimodular_distance");
  if (!(tol > 0.0)) throw PreconditionError("unimodular_distance: tol must be positive");

  const double lipschitz = norm(g, spec);
  PhaseAlignment out;
  if (lipschitz == 0.0) {
    out.distance = norm(f, spec);
    return out;
  }

  constexpr int kN = kPhaseGridPoints;
  constexpr double kStep = kTwoPi / kN;
  const Eigen::ArrayXd grid = screening_profile(f, g, spec);

  // Each coordinate term sqrt(a - b cos(t - phi)) varies on the scale of the
  // grid or slower, so every local minimum of the profile shows up as a
  // discrete local minimum of the grid. Those are refined in order of value
  // until the Lipschitz bound over their two brackets rules out improvement.
  std::vector<int> minima;
  for (int k = 0; k < kN; ++k) {
    const double prev = grid[(k + kN - 1) % kN];
    if (grid[k] <= prev && grid[k] <= grid[(k + 1) % kN]) minima.push_back(k);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return grid[a] < grid[b] || (grid[a] == grid[b] && a < b); });

  // Absolute error of the screening profile: sqrt of rounding in a - 2Re(..).
  const double slack = 1e-7 * (norm(f, spec) + lipschitz);
  const double theta_tol = std::max(tol / lipschitz, 1e-13);
  const auto objective = [&](double t) { return direct_distance(f, g, spec, t); };
  double best = kInf;
  double best_theta = 0.0;
  for (int k : minima) {
    if (grid[k] - lipschitz * kStep - slack >= best - tol) break;
    const ScalarMinimum local = golden_section(objective, kStep * (k - 1), kStep * (k + 1), theta_tol);
    if (local.value < best) {
      best = local.value;
      best_theta = local.x;
    }
  }
  out.distance = best;
  out.lambda_star = std::polar(1.0, best_theta);
  return out;
}

PhaseAlignment unimodular_distance(const CplxVec& f, const CplxVec& g, const NormSpec& spec, Field field, double tol) {
  check_inputs(f, g, spec, "unimodular_distance");
  if (!(tol > 0.0)) throw PreconditionError("unimodular_distance: tol must be positive");
  if (field == Field::real) {
    const double minus = norm(CplxVec(f - g), spec);
    const double plus = norm(CplxVec(f + g), spec);
    PhaseAlignment out;
    out.distance = std::min(minus, plus);
    out.lambda_star = plus < minus ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
    return out;
  }
  if (spec.p == 2.0) return unimodular_distance_euclidean(f, g, spec);
  return unimodular_distance_search(f, g, spec, tol);
}

double zero_tolerance(const CplxVec& f, const CplxVec& g, const NormSpec& spec) {
  return 1e-9 * std::max({norm(f, spec), norm(g, spec), 1.0});
}

RatioReport spr_ratio(const CplxVec& f, const CplxVec& g, const NormSpec& spec, Field field) {
  const PhaseAlignment alignment = unimodular_distance(f, g, spec, field);
  RatioReport out;
  out.numerator = alignment.distance;
  out.lambda_star = alignment.lambda_star;
  out.denominator = modulus_gap(f, g, spec);
  const double atol = zero_tolerance(f, g, spec);
  if (out.denominator <= atol) {
    if (out.numerator > atol) {
      out.flag = RatioFlag::infinite;
      out.ratio = kInf;
    } else {
      out.flag = RatioFlag::degenerate;
      out.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
  }
  out.flag = RatioFlag::finite;
  out.ratio = out.numerator / out.denominator;
  return out;
}

}  // namespace sprlat
