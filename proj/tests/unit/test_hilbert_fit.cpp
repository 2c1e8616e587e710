#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sprlat/errors.hpp"
#include "sprlat/hilbert_fit.hpp"
#include "sprlat/phase_distance.hpp"
#include "sprlat/sampling.hpp"

using namespace sprlat;

namespace {

const Complex I{0.0, 1.0};

CplxVec cv(std::initializer_list<Complex> xs) {
  CplxVec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) out[i++] = x;
  return out;
}

// Extremes of ||h||_H / ||h|| over random points of the span.
std::pair<double, double> sandwich(const HilbertForm& form, int samples, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  double lo = kInf, hi = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector2cd c = Eigen::Vector2cd::Zero();
    const CplxVec raw = form.field == Field::real ? complexify(random_real(2, rng)) : random_cplx(2, rng);
    c << raw[0], raw[1];
    const CplxVec h = form.combine(c);
    const double r = form.hnorm(h) / norm(h, form.norm);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

HilbertForm euclidean(const CplxVec& f, const CplxVec& g) {
  HilbertForm form;
  form.f = f;
  form.g = g;
  form.norm = NormSpec::lp(2);
  form.gram << f.squaredNorm(), f.dot(g), g.dot(f), g.squaredNorm();
  return form;
}

}  // namespace

TEST_CASE("independence") {
  CHECK(independence(cv({1, 0}), cv({0, 1})) == doctest::Approx(1.0));
  CHECK(independence(cv({1, I}), cv({I, -1})) < 1e-15);
  CHECK(independence(cv({1, 0}), cv({1, 1})) == doctest::Approx(0.5));
}

TEST_CASE("l2 fit is the Euclidean restriction") {
  Rng rng = make_rng(1);
  const CplxVec f = random_cplx(5, rng);
  const CplxVec g = random_cplx(5, rng);
  const HilbertForm form = fit_hilbert_norm(f, g, NormSpec::lp(2));
  CHECK(form.distortion_K == doctest::Approx(1.0).epsilon(1e-9));
  const Eigen::Vector2cd c(Complex(0.3, -1.2), Complex(2.0, 0.4));
  CHECK(form.norm_coeff(c) == doctest::Approx(form.combine(c).norm()).epsilon(1e-9));
}

TEST_CASE("disjoint unit vectors in l_inf give K = sqrt 2") {
  const CplxVec f = cv({1, 0, 0});
  const CplxVec g = cv({0, 0, 1});
  const HilbertForm form = fit_hilbert_norm(f, g, NormSpec::sup());
  CHECK(form.distortion_K == doctest::Approx(std::numbers::sqrt2).epsilon(1e-6));
  HilbertForm plain = euclidean(f, g);
  plain.norm = NormSpec::sup();
  const DistortionProfile e = measure_distortion(plain);
  CHECK(e.distortion() == doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
}

TEST_CASE("fits hold the sandwich at dense random samples") {
  Rng rng = make_rng(2);
  for (double p : {1.0, 3.0, kInf}) {
    for (int s = 0; s < 4; ++s) {
      const CplxVec f = random_cplx(6, rng);
      const CplxVec g = random_cplx(6, rng);
      const HilbertForm form = fit_hilbert_norm(f, g, NormSpec::lp(p));
      CHECK(form.distortion_K <= kMaxHilbertDistortion);
      const auto [lo, hi] = sandwich(form, 10000, 100 + static_cast<std::uint64_t>(s));
      CHECK(lo >= 1.0 - 1e-9);
      CHECK(hi <= form.distortion_K * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("real field fits") {
  Rng rng = make_rng(3);
  const CplxVec f = complexify(random_real(4, rng));
  const CplxVec g = complexify(random_real(4, rng));
  const HilbertForm form = fit_hilbert_norm(f, g, NormSpec::lp(1), Field::real);
  CHECK(form.distortion_K <= kMaxHilbertDistortion);
  CHECK(std::abs(form.gram(0, 1).imag()) < 1e-15);
  const auto [lo, hi] = sandwich(form, 10000, 9);
  CHECK(lo >= 1.0 - 1e-9);
  CHECK(hi <= form.distortion_K * (1.0 + 1e-9));
}

TEST_CASE("dependent inputs are rejected") {
  const CplxVec f = cv({1, I, 2});
  CHECK_THROWS_AS(fit_hilbert_norm(f, CplxVec(I * f), NormSpec::sup()), PreconditionError);
  CHECK_THROWS_AS(fit_hilbert_norm(f, CplxVec::Zero(3), NormSpec::lp(2)), PreconditionError);
}

TEST_CASE("coefficients outside the span are rejected") {
  const HilbertForm form = euclidean(cv({1, 0, 0}), cv({0, 1, 0}));
  CHECK(form.coefficients(cv({2, 3, 0}))[1] == Complex(3.0));
  CHECK_THROWS_AS(form.coefficients(cv({0, 0, 1})), PreconditionError);
}

TEST_CASE("align_pair conventions") {
  const HilbertForm form = euclidean(cv({1, 0}), cv({0, 1}));
  const AlignedPair a = align_pair(cv({1, 0}), cv({0, 1}), form);
  CHECK(a.mu == Complex(1.0));
  CHECK((a.f - cv({1, 1})).norm() == 0.0);
  CHECK((a.g - cv({1, -1})).norm() == 0.0);

  // <u, v> = i ||u|| ||v|| / 2
  const CplxVec u = cv({1, 0});
  const CplxVec v = cv({-0.5 * I, std::sqrt(0.75)});
  const AlignedPair b = align_pair(u, v, form);
  CHECK(std::abs(b.mu - I) < 1e-15);
  CHECK(std::abs(form.inner(b.f, b.g).imag()) < 1e-15);
  CHECK(form.inner(b.f, b.g).real() >= 0.0);
}

TEST_CASE("orthogonal reduction worked example") {
  const CplxVec f = cv({1, 0});
  const CplxVec g = cv({0.6, 0.8});
  const ReductionResult r = orthogonal_reduce(f, g, euclidean(f, g));
  CHECK(r.R == doctest::Approx(0.25));
  CHECK((r.f_prime - cv({0.6, -0.2})).norm() < 1e-15);
  CHECK((r.g_prime - cv({0.2, 0.6})).norm() < 1e-15);
  CHECK(std::abs(r.f_prime.dot(r.g_prime)) < 1e-15);
}

TEST_CASE("already orthogonal pairs are left alone") {
  const CplxVec f = cv({1, I});
  const CplxVec g = cv({I, 1});
  const ReductionResult r = orthogonal_reduce(f, g, euclidean(f, g));
  CHECK(r.R == 0.0);
  CHECK(r.f_prime == f);
  CHECK(r.g_prime == g);
}

TEST_CASE("negative or complex inner products are rejected") {
  const CplxVec f = cv({1, 0});
  const CplxVec g = cv({-0.6, 0.8});
  CHECK_THROWS_AS(orthogonal_reduce(f, g, euclidean(f, g)), PreconditionError);
  const CplxVec h = cv({I * 0.6, 0.8});
  CHECK_THROWS_AS(orthogonal_reduce(f, h, euclidean(f, h)), PreconditionError);
}

TEST_CASE("reduction chain on fitted forms") {
  Rng rng = make_rng(5);
  for (int s = 0; s < 40; ++s) {
    const NormSpec spec = NormSpec::lp(s % 2 ? 1.0 : 3.0);
    const CplxVec u = random_cplx(4, rng);
    const CplxVec v = random_cplx(4, rng);
    const HilbertForm form = fit_hilbert_norm(u, v, spec);
    const AlignedPair a = align_pair(u, v, form);
    const ReductionResult r = orthogonal_reduce(a.f, a.g, form);
    CHECK(r.R >= 0.0);
    CHECK(r.R <= 0.5);
    CHECK(r.orthogonality_residual < 1e-10);
    const double K = form.distortion_K;
    const double d_before = unimodular_distance(a.f, a.g, spec).distance;
    const double d_after = unimodular_distance(r.f_prime, r.g_prime, spec).distance;
    CHECK(d_before <= K * d_after + 1e-9);
    CHECK(std::hypot(norm(r.f_prime, spec), norm(r.g_prime, spec)) <= K * d_after + 1e-9);
  }
}

TEST_CASE("modulus differences never grow") {
  Rng rng = make_rng(6);
  for (int s = 0; s < 1000; ++s) {
    const CplxVec u = random_cplx(4, rng);
    const CplxVec v = random_cplx(4, rng);
    const HilbertForm form = euclidean(u, v);
    const AlignedPair a = align_pair(u, v, form);
    const ReductionResult r = orthogonal_reduce(a.f, a.g, form);
    const RealVec before = (modulus(a.f) - modulus(a.g)).cwiseAbs();
    const RealVec after = (modulus(r.f_prime) - modulus(r.g_prime)).cwiseAbs();
    CHECK(((after - before).array() <= 1e-12).all());
    CHECK(r.orthogonality_residual < 1e-10);
    CHECK((align_and_reduce(u, v, form).f_prime - r.f_prime).norm() == 0.0);
  }
}
