#include <doctest.h>

#include "sprlat/verify.hpp"

using namespace sprlat;

TEST_CASE("check tallies") {
  CheckTally t{"x", 0, 0, 0.0, 1e-10};
  t.record(1e-12);
  t.record(5e-9, 100.0);
  CHECK(t.checks == 2);
  CHECK(t.passed());
  t.record(1e-3);
  CHECK_FALSE(t.passed());
  CHECK(t.max_error == doctest::Approx(1e-3));
}

TEST_CASE("identity suite passes") {
  for (Eigen::Index n : {2, 8, 32}) {
    const VerifyReport r = verify_identities(n, 200, 7);
    CHECK(r.passed());
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.checks > 0);
  }
}

TEST_CASE("real SPR suite") {
  const RealSprReport r = verify_real_spr(4, 5, NormSpec::lp(2), SearchBudget{}, 3);
  CHECK(r.cases.size() == 4);
  CHECK(r.checks.passed());
}

TEST_CASE("complex SPR suite") {
  CHECK(verify_complex_spr(4, 5, NormSpec::sup(), 5).passed());
  CHECK(verify_complex_spr(4, 4, NormSpec::lp(3), 6).passed());
}
