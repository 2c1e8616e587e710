#include "sprlat/verify.hpp"

#include <algorithm>
#include <cmath>

#include "sprlat/errors.hpp"
#include "sprlat/sampling.hpp"
#include "sprlat/witness.hpp"

namespace sprlat {

void CheckTally::record(double error, double scale) {
  ++checks;
  const double normalized = error / std::max(1.0, scale);
  max_error = std::max(max_error, normalized);
  if (!(normalized <= tolerance)) ++failures;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckTally& c) { return c.passed(); });
}

VerifyReport verify_identities(Eigen::Index dim, int samples, std::uint64_t seed, const std::vector<double>& exponents) {
  if (dim < 1 || samples < 1) throw PreconditionError("verify_identities: dim and samples must be positive");
  CheckTally sup_inf{"abs_prod_sqrt = sqrt(join) sqrt(meet)", 0, 0, 0.0, 1e-12};
  CheckTally sup_inf_ops{"abs_prod_sqrt(x,y) = abs_prod_sqrt(join, meet)", 0, 0, 0.0, 1e-12};
  CheckTally homogeneity{"perp_profile homogeneity", 0, 0, 0.0, 1e-12};
  CheckTally sum_diff{"2 perp_profile = | |f+g|^2 - |f-g|^2 |^(1/2)", 0, 0, 0.0, 1e-10};
  CheckTally sum_diff_factor{"2 perp_profile = (|f+g|+|f-g|)^(1/2) | |f+g|-|f-g| |^(1/2)", 0, 0, 0.0, 1e-10};
  CheckTally meet_below{"meet(|f|,|g|) <= abs_prod_sqrt", 0, 0, 0.0, 1e-12};
  CheckTally monotone{"norm monotone on moduli", 0, 0, 0.0, 1e-12};
  CheckTally absolute{"norm(x) = norm(|x|)", 0, 0, 0.0, 1e-12};
  CheckTally norm_homogeneity{"perp_measure homogeneity", 0, 0, 0.0, 1e-12};

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  for (int s = 0; s < samples; ++s) {
    const RealVec x = random_real(dim, rng);
    const RealVec y = random_real(dim, rng);
    const RealVec ax = abs_real(x);
    const RealVec ay = abs_real(y);
    const RealVec lhs = abs_prod_sqrt(x, y);
    const RealVec via_ops = abs_prod_sqrt(join(ax, ay), meet(ax, ay));
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double rhs = std::sqrt(std::max(ax[i], ay[i])) * std::sqrt(std::min(ax[i], ay[i]));
      sup_inf.record(std::abs(lhs[i] - rhs), rhs);
      sup_inf_ops.record(std::abs(lhs[i] - via_ops[i]), lhs[i]);
    }

    const CplxVec f = random_cplx(dim, rng);
    const CplxVec g = random_cplx(dim, rng);
    const RealVec perp = perp_profile(f, g);

    // Real scalars, and complex scalars sharing one phase.
    const double a = normal(rng);
    const double b = normal(rng);
    const Complex phase = random_unimodular(rng);
    for (const auto& [la, lb] : {std::pair<Complex, Complex>{a, b}, {a * phase, b * phase}}) {
      const RealVec scaled = perp_profile(CplxVec(la * f), CplxVec(lb * g));
      const double factor = std::sqrt(std::abs(la)) * std::sqrt(std::abs(lb));
      for (Eigen::Index i = 0; i < dim; ++i) {
        homogeneity.record(std::abs(scaled[i] - factor * perp[i]), factor * perp[i]);
      }
      for (double p : exponents) {
        const NormSpec spec = NormSpec::lp(p);
        const double lhs_n = perp_measure(CplxVec(la * f), CplxVec(lb * g), spec);
        const double rhs_n = factor * perp_measure(f, g, spec);
        norm_homogeneity.record(std::abs(lhs_n - rhs_n), rhs_n);
      }
    }

    const RealVec plus = modulus(CplxVec(f + g));
    const RealVec minus = modulus(CplxVec(f - g));
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double two_perp = 2.0 * perp[i];
      const double squares = std::sqrt(std::abs(plus[i] * plus[i] - minus[i] * minus[i]));
      const double factored = std::sqrt(plus[i] + minus[i]) * std::sqrt(std::abs(plus[i] - minus[i]));
      sum_diff.record(std::abs(two_perp - squares), two_perp);
      sum_diff_factor.record(std::abs(two_perp - factored), two_perp);
    }

    const RealVec mf = modulus(f);
    const RealVec mg = modulus(g);
    const RealVec meets = meet(mf, mg);
    const RealVec prods = abs_prod_sqrt(mf, mg);
    for (Eigen::Index i = 0; i < dim; ++i) meet_below.record(std::max(0.0, meets[i] - prods[i]), prods[i]);

    // |x| <= |y| by construction: y = x scaled by factors >= 1.
    CplxVec bigger = f;
    for (Eigen::Index i = 0; i < dim; ++i) bigger[i] *= 1.0 + unit(rng) * (unit(rng) < 0.3 ? 0.0 : 1.0);
    for (double p : exponents) {
      NormSpec spec = NormSpec::lp(p);
      spec.weights.resize(static_cast<std::size_t>(dim));
      for (auto& w : spec.weights) w = 0.1 + unit(rng);
      const double small = norm(f, spec);
      const double large = norm(bigger, spec);
      monotone.record(std::max(0.0, small - large), large);
      absolute.record(std::abs(norm(f, spec) - norm(mf, spec)), small);
    }
  }
  return VerifyReport{{sup_inf, sup_inf_ops, homogeneity, sum_diff, sum_diff_factor, meet_below, monotone, absolute,
                       norm_homogeneity}};
}

RealSprReport verify_real_spr(int subspaces, Eigen::Index dim, const NormSpec& spec, const SearchBudget& budget,
                              std::uint64_t seed) {
  if (dim < 2) throw PreconditionError("verify_real_spr: dimension must be at least 2");
  RealSprReport out;
  CheckTally band{"|1/c_lower - eps*| / eps* <= 0.10", 0, 0, 0.0, 0.10};
  CheckTally lower{"|| |u| ^ |v| || <= || |uv|^(1/2) ||", 0, 0, 0.0, 1e-12};
  CheckTally upper{"|| |uv|^(1/2) || <= sqrt(2 || |u| ^ |v| ||)", 0, 0, 0.0, 1e-12};
  for (int s = 0; s < subspaces; ++s) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
    Subspace E{Ambient{static_cast<std::size_t>(dim), Field::real, spec},
               {complexify(random_real(dim, rng)), complexify(random_real(dim, rng))}};
    const SPREstimate est = estimate_spr_constant(E, budget, mix_seed(seed, 2 * s));
    const PairWitness w = search_almost_disjoint(E, budget, mix_seed(seed, 2 * s + 1));
    RealSprCase c;
    c.c_lower = est.c_lower;
    c.unbounded = est.unbounded;
    c.min_disjointness = w.disjointness;
    const RealVec product = abs_prod_sqrt(modulus(w.u), modulus(w.v));
    c.min_product = lattice_norm(product, spec);
    if (!est.unbounded && w.disjointness > 0.0) {
      c.relative_gap = std::abs(1.0 / est.c_lower - w.disjointness) / w.disjointness;
      band.record(c.relative_gap);
    }
    lower.record(std::max(0.0, w.disjointness - c.min_product));
    upper.record(std::max(0.0, c.min_product - std::sqrt(2.0 * w.disjointness)));
    out.cases.push_back(c);
  }
  out.checks.checks = {band, lower, upper};
  return out;
}

namespace {

// A random pair of nonzero vectors with complementary supports.
std::pair<CplxVec, CplxVec> random_disjoint_pair(Eigen::Index dim, Rng& rng) {
  CplxVec u = random_cplx(dim, rng);
  CplxVec v = random_cplx(dim, rng);
  std::uniform_int_distribution<Eigen::Index> cut(1, dim - 1);
  const Eigen::Index split = cut(rng);
  for (Eigen::Index i = 0; i < dim; ++i) (i < split ? v : u)[i] = 0.0;
  return {u, v};
}

}  // namespace

VerifyReport verify_complex_spr(int instances, Eigen::Index dim, const NormSpec& spec, std::uint64_t seed) {
  if (dim < 2) throw PreconditionError("verify_complex_spr: dimension must be at least 2");
  CheckTally trip_a{"almost disjoint -> SPR violation -> perpendicular pair (m=0.1, eps=0.2)", 0, 0, 0.0, 0.0};
  CheckTally trip_b{"perpendicular pair -> SPR violation above C", 0, 0, 0.0, 0.0};
  CheckTally pr_failure{"disjoint pair -> |f+g| = |f-g|", 0, 0, 0.0, 0.0};
  for (int s = 0; s < instances; ++s) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
    auto [u, v] = random_disjoint_pair(dim, rng);
    u /= norm(u, spec);
    v /= norm(v, spec);

    try {
      disjoint_to_pr_failure(u, v, spec);
      pr_failure.record(0.0);
    } catch (const std::exception&) {
      pr_failure.record(1.0);
    }

    try {
      const SprViolation violation = adp_to_spr_violation(u, v, spec);
      const PerpConstruction perp = spr_failure_to_perp_pair(violation.f_prime, violation.g_prime, spec, 0.1, 0.2);
      trip_a.record(perp.witness.separation >= 0.1 - 1e-6 && perp.witness.perp < 0.2 ? 0.0 : 1.0);

      const double m = 0.1;
      const double C = 50.0;
      const double eps = 0.99 * delta_for_separation(m) * m / (2.0 * C);
      const PerpConstruction pair = spr_failure_to_perp_pair(violation.f_prime, violation.g_prime, spec, m, eps);
      const SprFailure back = perp_pair_to_spr_failure(pair.witness.u, pair.witness.v, spec, m, C);
      const bool above = back.ratio.flag == RatioFlag::infinite || back.ratio.ratio > C;
      trip_b.record(above ? 0.0 : 1.0);
    } catch (const std::exception&) {
      trip_a.record(1.0);
      trip_b.record(1.0);
    }
  }
  return VerifyReport{{pr_failure, trip_a, trip_b}};
}

}  // namespace sprlat
