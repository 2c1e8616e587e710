#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sprlat/errors.hpp"
#include "sprlat/phase_distance.hpp"
#include "sprlat/sampling.hpp"
#include "sprlat/witness.hpp"

using namespace sprlat;

namespace {

const Complex I{0.0, 1.0};

CplxVec cv(std::initializer_list<Complex> xs) {
  CplxVec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) out[i++] = x;
  return out;
}

CplxVec normalized(CplxVec x, const NormSpec& spec) { return x / norm(x, spec); }

double m_of_theta(double t) {
  return (1 - t) / std::numbers::sqrt2 + std::sqrt(1 + (1 - t) * (1 - t)) / (2 * std::numbers::sqrt2) - 1;
}

}  // namespace

TEST_CASE("theta and delta parameters") {
  CHECK(separation_for_theta(0.0) == doctest::Approx(kMaxSeparation).epsilon(1e-15));
  CHECK(separation_for_theta(1.0) < 0.0);
  for (double m : {0.01, 0.05, 0.1, 0.2}) {
    const double t = theta_for_separation(m);
    CHECK(t > 0.0);
    CHECK(t < 1.0);
    CHECK(std::abs(m_of_theta(t) - m) < 1e-12);
    const double d = delta_for_separation(m);
    CHECK(std::sqrt(1 - d * d) / d == doctest::Approx(1 + m / 2).epsilon(1e-14));
  }
  const BuilderParams b = BuilderParams::make(0.1, 0.05);
  const double t = b.theta;
  const double bound = std::max(8 * std::numbers::sqrt2 / ((1 + (1 - t) * (1 - t)) * 0.05 * 0.05),
                                2 * std::numbers::sqrt2 / t);
  CHECK(b.C_required == doctest::Approx(kStrictMargin * bound));
  CHECK_THROWS_AS(BuilderParams::make(kMaxSeparation, 0.05), PreconditionError);
  CHECK_THROWS_AS(BuilderParams::make(0.1, 0.0), PreconditionError);
}

TEST_CASE("disjoint pairs give phase retrieval failures") {
  const PrFailurePair a = disjoint_to_pr_failure(cv({1, 0}), cv({0, 1}), NormSpec::lp(2));
  CHECK(a.F == cv({1, 1}));
  CHECK(a.G == cv({1, -1}));
  CHECK(modulus(a.F) == modulus(a.G));

  const PrFailurePair b = disjoint_to_pr_failure(cv({I, 0}), cv({0, 2}), NormSpec::sup());
  CHECK(modulus(b.F)[0] == 1.0);
  CHECK(modulus(b.F)[1] == 2.0);
  CHECK(modulus(b.F) == modulus(b.G));

  CHECK_THROWS_AS(disjoint_to_pr_failure(cv({1, 0}), cv({0.1, 1}), NormSpec::lp(2)), PreconditionError);
  CHECK_THROWS_AS(disjoint_to_pr_failure(cv({1, 0}), cv({0, 0}), NormSpec::lp(2)), PreconditionError);
}

TEST_CASE("almost disjoint pair certificate") {
  const NormSpec sup = NormSpec::sup();
  const CplxVec u = normalized(cv({1, 0.1, 0}), sup);
  const CplxVec v = normalized(cv({0, 0.1, 1}), sup);
  const SprViolation r = adp_to_spr_violation(u, v, sup);
  CHECK(r.eps_prime == doctest::Approx(0.1));
  CHECK(r.modulus_gap <= 2 * r.eps_prime + 1e-8);
  CHECK(r.separation >= std::numbers::sqrt2 - 1e-6);
  CHECK(r.certified_ratio > 1.0 / (std::numbers::sqrt2 * 0.1));
  CHECK(r.distortion_K <= kMaxHilbertDistortion);
}

TEST_CASE("exactly disjoint pairs certify an infinite ratio") {
  const NormSpec spec = NormSpec::lp(3);
  const CplxVec u = normalized(cv({1, I, 0, 0}), spec);
  const CplxVec v = normalized(cv({0, 0, 2, -I}), spec);
  const SprViolation r = adp_to_spr_violation(u, v, spec);
  CHECK(r.eps_prime == 0.0);
  CHECK(r.flag == RatioFlag::infinite);
  CHECK((modulus(r.f_prime) - modulus(r.g_prime)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("certificate preconditions") {
  const NormSpec sup = NormSpec::sup();
  CHECK_THROWS_AS(adp_to_spr_violation(cv({2, 0}), cv({0, 1}), sup), PreconditionError);
  CHECK_THROWS_AS(adp_to_spr_violation(cv({1, 1}), cv({I, I}), sup), PreconditionError);
}

TEST_CASE("SPR failure to perpendicular pair") {
  const NormSpec sup = NormSpec::sup();
  const CplxVec u = normalized(cv({1, I, 0}), sup);
  const CplxVec v = normalized(cv({0, 0, 1}), sup);
  for (auto [m, eps] : {std::pair{0.1, 0.05}, std::pair{0.2, 0.01}}) {
    const PerpConstruction r = spr_failure_to_perp_pair(u + v, u - v, sup, m, eps);
    CHECK(r.witness.separation >= m - 1e-6);
    CHECK(r.witness.perp < eps);
    CHECK(norm(r.witness.u, sup) == doctest::Approx(1.0));
    CHECK(norm(r.witness.v, sup) == doctest::Approx(1.0));
    CHECK(r.input_ratio.flag == RatioFlag::infinite);
  }
  CHECK_THROWS_AS(spr_failure_to_perp_pair(u + v, u - v, sup, kMaxSeparation, 0.05), PreconditionError);
  // A pair that barely fails SPR does not meet the hypothesis.
  CHECK_THROWS_AS(spr_failure_to_perp_pair(cv({1, 0.5, 0}), cv({0.2, 1, 0}), sup, 0.1, 0.05), PreconditionError);
}

TEST_CASE("perpendicular pair to SPR failure") {
  const NormSpec sup = NormSpec::sup();
  const SprFailure r = perp_pair_to_spr_failure(cv({1, 1}), cv({I, -I}), sup, 1.0, 100.0);
  CHECK((r.f - cv({{1, 1}, {1, -1}})).norm() == 0.0);
  CHECK((r.g - cv({{1, -1}, {1, 1}})).norm() == 0.0);
  CHECK(r.ratio.flag == RatioFlag::infinite);
  CHECK(r.perp == 0.0);
  CHECK(r.M_sampled >= 0.5 * r.delta * 1.0);
}

TEST_CASE("the perpendicularity threshold is strict") {
  const NormSpec sup = NormSpec::sup();
  const double m = 0.1;
  const CplxVec u = cv({1, 1, 0.5});
  const CplxVec v = cv({I, -I, 0.05});
  const double perp = perp_measure(u, v, sup);
  const double delta = delta_for_separation(m);
  double C = delta * m / (2.0 * perp);
  while (delta * m / (2.0 * C) > perp) C = std::nextafter(C, kInf);
  CHECK_THROWS_AS(perp_pair_to_spr_failure(u, v, sup, m, C), PreconditionError);
  CHECK_NOTHROW(perp_pair_to_spr_failure(u, v, sup, m, 0.5 * C));
}

TEST_CASE("l_inf^4 example pairs are not separated") {
  const double delta = 1.0 / 99.0;
  const double A = 1.0 / (1.0 + delta);
  const CplxVec u = cv({1, 1, 1, 0});
  const CplxVec v = A * cv({I + delta, (1.0 + delta) * I, I, delta});
  CHECK_THROWS_AS(perp_pair_to_spr_failure(u, v, NormSpec::sup(), 0.1, 1.0), PreconditionError);
}

TEST_CASE("complex phase retrieval equivalences") {
  const PrEquivalences a = complex_pr_equivalences(cv({1, 0}), cv({0, 1}));
  CHECK(a.all_true());
  const PrEquivalences b = complex_pr_equivalences(cv({1, 1}), cv({I, -I}));
  CHECK(b.all_true());
  const PrEquivalences c = complex_pr_equivalences(cv({1, 0}), cv({1, 1}));
  CHECK(c.all_false());
  CHECK_THROWS_AS(complex_pr_equivalences(cv({1, I}), cv({2, 2.0 * I})), PreconditionError);

  Rng rng = make_rng(21);
  for (int s = 0; s < 500; ++s) {
    const PrEquivalences e = complex_pr_equivalences(random_cplx(5, rng), random_cplx(5, rng));
    CHECK(e.agree());
  }
}

TEST_CASE("round trip through the builders") {
  const NormSpec spec = NormSpec::lp(2);
  Rng rng = make_rng(22);
  for (int s = 0; s < 5; ++s) {
    CplxVec a = random_cplx(4, rng);
    CplxVec b = random_cplx(4, rng);
    a.tail(2).setZero();
    b.head(2).setZero();
    const SprViolation v = adp_to_spr_violation(normalized(a, spec), normalized(b, spec), spec);
    const PerpConstruction p = spr_failure_to_perp_pair(v.f_prime, v.g_prime, spec, 0.1, 0.2);
    CHECK(p.witness.separation >= 0.1 - 1e-6);
    CHECK(p.witness.perp < 0.2);
  }
}
