#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sprlat/phase_distance.hpp"
#include "sprlat/sampling.hpp"

using namespace sprlat;

namespace {

const Complex I{0.0, 1.0};

oracle::cvec to_oracle(const CplxVec& x) { return oracle::cvec(x.data(), x.data() + x.size()); }

CplxVec cv(std::initializer_list<Complex> xs) {
  CplxVec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("identical vectors have distance zero") {
  const CplxVec f = cv({{1, 2}, {0.5, -1}});
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    const PhaseAlignment a = unimodular_distance(f, f, NormSpec::lp(p));
    CHECK(a.distance < 1e-9);
    CHECK(std::abs(a.lambda_star - Complex(1.0)) < 1e-6);
  }
}

TEST_CASE("orthogonal unit vectors in l2") {
  const PhaseAlignment a = unimodular_distance(cv({1, 0}), cv({0, 1}), NormSpec::lp(2));
  CHECK(a.distance == doctest::Approx(std::numbers::sqrt2));
  const double grid = oracle::phase_distance({1.0, 0.0}, {0.0, 1.0}, 2.0).refined;
  CHECK(grid == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("l_inf^4 example distance is below 2 A delta") {
  const double delta = 1.0 / 99.0;
  const double A = 1.0 / (1.0 + delta);
  const CplxVec u = cv({1, 1, 1, 0});
  const CplxVec v = A * cv({I + delta, (1.0 + delta) * I, I, delta});
  const double d = unimodular_distance(u, v, NormSpec::sup()).distance;
  CHECK(d <= 2.0 * A * delta + 1e-9);
  CHECK(std::abs(d - oracle::phase_distance(to_oracle(u), to_oracle(v), kInf).refined) < 1e-8);
}

TEST_CASE("real field uses +-1 only") {
  const CplxVec f = cv({1, 2});
  const CplxVec g = cv({-1, -2.5});
  const PhaseAlignment a = unimodular_distance(f, g, NormSpec::lp(2), Field::real);
  CHECK(a.lambda_star == Complex(-1.0));
  CHECK(a.distance == doctest::Approx(0.5));
  const PhaseAlignment b = unimodular_distance(cv({1, 0}), cv({0, 1}), NormSpec::sup(), Field::real);
  CHECK(b.distance == doctest::Approx(1.0));
}

TEST_CASE("closed form and search agree for weighted l2") {
  Rng rng = make_rng(3);
  std::uniform_real_distribution<double> unit(0.2, 3.0);
  for (int s = 0; s < 100; ++s) {
    NormSpec spec{2.0, {}};
    for (int i = 0; i < 5; ++i) spec.weights.push_back(unit(rng));
    const CplxVec f = random_cplx(5, rng);
    const CplxVec g = random_cplx(5, rng);
    const double closed = unimodular_distance_euclidean(f, g, spec).distance;
    const double searched = unimodular_distance_search(f, g, spec).distance;
    CHECK(std::abs(closed - searched) < 1e-8);
  }
}

TEST_CASE("search agrees with the grid oracle") {
  Rng rng = make_rng(4);
  for (double p : {1.0, 3.0, kInf}) {
    for (int s = 0; s < 10; ++s) {
      const CplxVec f = random_cplx(4, rng);
      const CplxVec g = random_cplx(4, rng);
      const PhaseAlignment a = unimodular_distance(f, g, NormSpec::lp(p));
      const oracle::PhaseGrid grid = oracle::phase_distance(to_oracle(f), to_oracle(g), p, {}, 20000, 400, 4);
      CHECK(std::abs(a.distance - grid.refined) < 1e-6);
      CHECK(a.distance <= grid.coarse + 1e-12);
      CHECK(std::abs(std::abs(a.lambda_star) - 1.0) < 1e-14);
      CHECK(std::abs(a.distance - oracle::distance_at(to_oracle(f), to_oracle(g), std::arg(a.lambda_star), p, {})) <
            1e-12);
    }
  }
}

TEST_CASE("stability ratio flags") {
  const NormSpec sup = NormSpec::sup();
  const RatioReport inf = spr_ratio(cv({{1, 1}, {1, -1}}), cv({{1, -1}, {1, 1}}), sup);
  CHECK(inf.flag == RatioFlag::infinite);
  CHECK(std::isinf(inf.ratio));
  CHECK(inf.numerator > 0.0);

  const CplxVec g = cv({{0.3, 1}, {-2, 0.5}});
  const RatioReport one = spr_ratio(CplxVec(2.0 * g), g, sup);
  CHECK(one.flag == RatioFlag::finite);
  CHECK(one.ratio == doctest::Approx(1.0));

  const RatioReport deg = spr_ratio(CplxVec(I * g), g, sup);
  CHECK(deg.flag == RatioFlag::degenerate);
  CHECK(std::isnan(deg.ratio));
}

TEST_CASE("zero tolerance scales with the inputs") {
  const CplxVec f = cv({1000, 0});
  const CplxVec g = cv({0, 1});
  CHECK(zero_tolerance(f, g, NormSpec::sup()) == doctest::Approx(1e-6));
  CHECK(zero_tolerance(CplxVec(1e-3 * g), CplxVec(1e-3 * g), NormSpec::sup()) == doctest::Approx(1e-9));
}
