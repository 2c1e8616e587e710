#include "sprlat_cli/commands.hpp"

#include <cmath>
#include <numbers>

#include "sprlat/errors.hpp"
#include "sprlat/hilbert_fit.hpp"
#include "sprlat/phase_distance.hpp"
#include "sprlat/verify.hpp"
#include "sprlat/witness.hpp"
#include "sprlat_cli/problem_file.hpp"

namespace sprlat::cli {

namespace {

SearchBudget budget_from(const Options& opts) {
  if (opts.restarts < 1 || opts.iters < 1) throw PreconditionError("--restarts and --iters must be positive");
  SearchBudget budget;
  budget.restarts = opts.restarts;
  budget.iterations = opts.iters;
  return budget;
}

Json header(const std::string& command, const Ambient& ambient) {
  Json out;
  out["command"] = command;
  out["ambient"] = ambient_json(ambient);
  return out;
}

void assert_that(Outcome& out, bool ok, const std::string& what) {
  if (!ok) {
    out.held = false;
    out.violations.push_back(what);
  }
}

Json ratio_json(const RatioReport& r) {
  Json out;
  out["numerator"] = number(r.numerator);
  out["denominator"] = number(r.denominator);
  out["ratio"] = number(r.ratio);
  out["flag"] = to_string(r.flag);
  out["lambda_star"] = Json::array({r.lambda_star.real(), r.lambda_star.imag()});
  return out;
}

Json tally_json(const CheckTally& t) {
  Json out;
  out["name"] = t.name;
  out["checks"] = t.checks;
  out["failures"] = t.failures;
  out["max_error"] = number(t.max_error);
  out["tolerance"] = number(t.tolerance);
  return out;
}

}  // namespace

double parse_exponent(const std::string& text) {
  if (text == "inf") return kInf;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(p >= 1.0)) throw PreconditionError("norm exponent must be a number >= 1 or \"inf\"");
  return p;
}

Outcome cmd_analyze(const std::string& path, const Options& opts) {
  const Subspace E = load_problem(path);
  const SearchBudget budget = budget_from(opts);
  const SPREstimate est = estimate_spr_constant(E, budget, mix_seed(opts.seed, 0));
  const PairWitness w = search_almost_disjoint(E, budget, mix_seed(opts.seed, 1));
  const Field field = E.ambient.field;

  Outcome out;
  Json& r = out.report = header("analyze", E.ambient);
  r["rank"] = E.rank();
  r["seed"] = opts.seed;
  r["budget"] = budget_json(budget);
  Json estimate;
  estimate["verdict"] = est.unbounded ? "unbounded" : "finite";
  estimate["c_lower"] = number(est.c_lower);
  estimate["f"] = vector_json(est.f, field);
  estimate["g"] = vector_json(est.g, field);
  estimate["ratio"] = ratio_json(est.report);
  estimate["evaluations"] = est.evaluations;
  r["estimate"] = estimate;
  r["disjoint_witness"] = witness_json(w, field);

  Json cross;
  if (field == Field::real) {
    // C-SPR holds iff there is no (1/C)-almost disjoint pair.
    const double tol = opts.tol.value_or(0.10);
    cross["applicable"] = true;
    cross["tolerance"] = tol;
    bool consistent = false;
    if (est.unbounded) {
      consistent = w.disjointness <= 1e-6;
      cross["inverse_c_lower"] = 0.0;
    } else {
      const double inv = 1.0 / est.c_lower;
      cross["inverse_c_lower"] = inv;
      const double gap = w.disjointness > 0.0 ? std::abs(inv - w.disjointness) / w.disjointness : kInf;
      cross["relative_gap"] = number(gap);
      consistent = gap <= tol;
    }
    cross["consistency"] = consistent ? "OK" : "MISMATCH";
    assert_that(out, consistent, "1/c_lower and the minimal disjointness differ by more than the tolerance");
  } else {
    cross["applicable"] = false;
    // An eps-almost disjoint pair rules out (1/(sqrt2 eps))-SPR.
    cross["adp_implied_constant"] =
        w.disjointness > 0.0 ? number(1.0 / (std::numbers::sqrt2 * w.disjointness)) : Json("inf");
  }
  r["cross_check"] = cross;
  return out;
}

Outcome cmd_search_disjoint(const std::string& path, const Options& opts) {
  const Subspace E = load_problem(path);
  const SearchBudget budget = budget_from(opts);
  const PairWitness w = search_almost_disjoint(E, budget, opts.seed);
  Outcome out;
  Json& r = out.report = header("search-disjoint", E.ambient);
  r["seed"] = opts.seed;
  r["budget"] = budget_json(budget);
  r["witness"] = witness_json(w, E.ambient.field);
  return out;
}

Outcome cmd_search_perp(const std::string& path, const Options& opts) {
  const Subspace E = load_problem(path);
  const SearchBudget budget = budget_from(opts);
  const std::vector<double> grid = opts.m.empty() ? kDefaultMGrid : opts.m;
  const double eps_fail = opts.eps.value_or(kDefaultFailPerp);
  const PRVerdict verdict = check_pr(E, grid, budget, opts.seed, eps_fail);

  Outcome out;
  Json& r = out.report = header("search-perp", E.ambient);
  r["seed"] = opts.seed;
  r["budget"] = budget_json(budget);
  r["eps_fail"] = eps_fail;
  r["verdict"] = to_string(verdict.kind);
  Json per_m = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Json item;
    item["m"] = grid[i];
    item["feasible"] = static_cast<bool>(verdict.feasible[i]);
    item["min_perp"] = number(verdict.min_perp[i]);
    per_m.push_back(item);
  }
  r["per_m"] = per_m;
  if (verdict.witness) {
    r["witness_m"] = *verdict.witness_m;
    r["witness"] = witness_json(*verdict.witness, E.ambient.field);
  }
  return out;
}

Outcome cmd_reduce(const std::string& path, const Options& opts) {
  (void)opts;
  const PairProblem pair = load_pair(path);
  const Field field = pair.ambient.field;
  const NormSpec& spec = pair.ambient.norm;
  const HilbertForm form = fit_hilbert_norm(pair.first, pair.second, spec, field);
  // Rotate g so that <f, g>_H is real and nonnegative.
  const Complex fg = form.inner(pair.first, pair.second);
  const Complex omega = std::abs(fg) > 0.0 ? fg / std::abs(fg) : Complex{1.0, 0.0};
  const CplxVec f = pair.first;
  const CplxVec g = omega * pair.second;
  const ReductionResult red = orthogonal_reduce(f, g, form);

  Outcome out;
  Json& r = out.report = header("reduce", pair.ambient);
  r["distortion_K"] = form.distortion_K;
  r["gram"] = gram_json(form.gram);
  r["rotation"] = Json::array({omega.real(), omega.imag()});
  r["inner_before"] = red.inner_before;
  r["R"] = red.R;
  r["f_prime"] = vector_json(red.f_prime, field);
  r["g_prime"] = vector_json(red.g_prime, field);
  r["orthogonality_residual"] = red.orthogonality_residual;
  r["modulus_gap_before"] = modulus_gap(f, g, spec);
  r["modulus_gap_after"] = modulus_gap(red.f_prime, red.g_prime, spec);
  r["phase_distance_before"] = unimodular_distance(f, g, spec, field).distance;
  r["phase_distance_after"] = unimodular_distance(red.f_prime, red.g_prime, spec, field).distance;
  return out;
}

Outcome cmd_build(const std::string& kind, const std::string& path, const Options& opts) {
  const PairProblem pair = load_pair(path);
  const Field field = pair.ambient.field;
  const NormSpec& spec = pair.ambient.norm;
  Outcome out;
  Json& r = out.report = header("build " + kind, pair.ambient);

  if (kind == "adp2spr") {
    const SprViolation s = adp_to_spr_violation(pair.first, pair.second, spec);
    r["eps_prime"] = s.eps_prime;
    r["f_prime"] = vector_json(s.f_prime, field);
    r["g_prime"] = vector_json(s.g_prime, field);
    r["separation"] = s.separation;
    r["modulus_gap"] = s.modulus_gap;
    r["certified_ratio"] = number(s.certified_ratio);
    r["flag"] = to_string(s.flag);
    r["implied_constant"] = number(1.0 / (std::numbers::sqrt2 * s.eps_prime));
    r["distortion_K"] = s.distortion_K;
    r["R"] = s.R;
    r["mu"] = Json::array({s.mu.real(), s.mu.imag()});
    r["swapped"] = s.swapped;
    return out;
  }
  if (kind == "spr2perp") {
    if (opts.m.size() > 1) throw PreconditionError("build spr2perp takes a single --m");
    const double m = opts.m.empty() ? 0.1 : opts.m.front();
    const double eps = opts.eps.value_or(0.05);
    const PerpConstruction c = spr_failure_to_perp_pair(pair.first, pair.second, spec, m, eps);
    r["m"] = m;
    r["eps"] = eps;
    r["theta"] = c.params.theta;
    r["C_required"] = c.params.C_required;
    r["input_ratio"] = ratio_json(c.input_ratio);
    r["witness"] = witness_json(c.witness, field);
    r["g_prime_norm"] = c.g_prime_norm;
    r["marginal"] = c.marginal;
    r["distortion_K"] = c.distortion_K;
    assert_that(out, c.witness.separation >= m - 1e-6, "separation below m");
    assert_that(out, c.witness.perp < eps, "perp not below eps");
    return out;
  }
  if (kind == "perp2spr") {
    if (opts.m.size() > 1) throw PreconditionError("build perp2spr takes a single --m");
    const double m = opts.m.empty() ? 0.1 : opts.m.front();
    const double C = opts.C.value_or(10.0);
    const SprFailure s = perp_pair_to_spr_failure(pair.first, pair.second, spec, m, C);
    r["m"] = m;
    r["C"] = C;
    r["delta"] = s.delta;
    r["perp"] = s.perp;
    r["perp_threshold"] = s.perp_threshold;
    r["M_sampled"] = s.M_sampled;
    r["f"] = vector_json(s.f, field);
    r["g"] = vector_json(s.g, field);
    r["ratio"] = ratio_json(s.ratio);
    assert_that(out, s.ratio.flag == RatioFlag::infinite || s.ratio.ratio > C, "ratio does not exceed C");
    return out;
  }
  if (kind == "pr-equiv") {
    const double atol = opts.tol.value_or(1e-9);
    const PrEquivalences e = complex_pr_equivalences(pair.first, pair.second, atol);
    r["atol"] = atol;
    r["moduli_equal"] = e.moduli_equal;
    r["sum_difference"] = e.sum_difference;
    r["perpendicular"] = e.perpendicular;
    r["pythagorean"] = e.pythagorean;
    r["residuals"] = Json::array({e.residuals[0], e.residuals[1], e.residuals[2], e.residuals[3]});
    r["verdict"] = e.all_true() ? "all_true" : "all_false";
    return out;
  }
  throw PreconditionError("unknown build kind '" + kind + "'");
}

Outcome cmd_verify(const std::string& suite, const Options& opts) {
  Outcome out;
  Json& r = out.report;
  r["command"] = "verify " + suite;
  r["seed"] = opts.seed;
  VerifyReport checks;
  if (suite == "identities") {
    const int dim = opts.dim > 0 ? opts.dim : 8;
    const int samples = opts.samples > 0 ? opts.samples : 1000;
    r["dim"] = dim;
    r["samples"] = samples;
    checks = verify_identities(dim, samples, opts.seed);
  } else if (suite == "real-spr") {
    const int dim = opts.dim > 0 ? opts.dim : 5;
    const int samples = opts.samples > 0 ? opts.samples : 20;
    const NormSpec spec = NormSpec::lp(parse_exponent(opts.p.empty() ? "2" : opts.p));
    const SearchBudget budget = budget_from(opts);
    r["dim"] = dim;
    r["samples"] = samples;
    r["norm"] = norm_json(spec);
    r["budget"] = budget_json(budget);
    const RealSprReport rep = verify_real_spr(samples, dim, spec, budget, opts.seed);
    Json cases = Json::array();
    for (const auto& c : rep.cases) {
      Json item;
      item["c_lower"] = number(c.c_lower);
      item["unbounded"] = c.unbounded;
      item["min_disjointness"] = c.min_disjointness;
      item["relative_gap"] = c.relative_gap;
      item["min_product"] = c.min_product;
      cases.push_back(item);
    }
    r["cases"] = cases;
    checks = rep.checks;
  } else if (suite == "complex-spr") {
    const int dim = opts.dim > 0 ? opts.dim : 5;
    const int samples = opts.samples > 0 ? opts.samples : 20;
    const NormSpec spec = NormSpec::lp(parse_exponent(opts.p.empty() ? "inf" : opts.p));
    r["dim"] = dim;
    r["samples"] = samples;
    r["norm"] = norm_json(spec);
    checks = verify_complex_spr(samples, dim, spec, opts.seed);
  } else {
    throw PreconditionError("unknown verify suite '" + suite + "'");
  }
  Json list = Json::array();
  for (const auto& t : checks.checks) {
    list.push_back(tally_json(t));
    assert_that(out, t.passed(), t.name);
  }
  r["checks"] = list;
  r["passed"] = checks.passed();
  return out;
}

Outcome cmd_example_c4(const Options& opts) {
  const double delta = opts.delta;
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("--delta must lie in (0, 1)");
  const Complex i{0.0, 1.0};
  CplxVec u(4), w(4);
  u << 1.0, 1.0, 1.0, 0.0;
  w << 1.0, i, 0.0, 1.0;
  const double A = 1.0 / (1.0 + delta);
  const CplxVec v = A * (i * u + delta * w);
  const Ambient ambient{4, Field::complex, NormSpec::sup()};
  const Subspace E{ambient, {u, w}};

  const double perp = perp_measure(u, v, ambient.norm);
  const double expected_perp = std::sqrt(A * delta);
  const double bound = 2.0 * A * delta;
  const PhaseAlignment distance = unimodular_distance(u, v, ambient.norm);
  const SearchBudget budget = budget_from(opts);
  const std::vector<double> grid = opts.m.empty() ? kDefaultMGrid : opts.m;
  const PRVerdict verdict = check_pr(E, grid, budget, opts.seed, opts.eps.value_or(kDefaultFailPerp));

  Outcome out;
  Json& r = out.report = header("example c4", ambient);
  r["delta"] = delta;
  r["A"] = A;
  r["u"] = vector_json(u, Field::complex);
  r["w"] = vector_json(w, Field::complex);
  r["v"] = vector_json(v, Field::complex);
  r["perp"] = perp;
  r["perp_expected"] = expected_perp;
  r["distance_bound"] = bound;
  r["distance_measured"] = distance.distance;
  r["lambda_star"] = Json::array({distance.lambda_star.real(), distance.lambda_star.imag()});
  r["seed"] = opts.seed;
  r["budget"] = budget_json(budget);
  r["verdict"] = to_string(verdict.kind);
  Json per_m = Json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Json item;
    item["m"] = grid[k];
    item["feasible"] = static_cast<bool>(verdict.feasible[k]);
    item["min_perp"] = number(verdict.min_perp[k]);
    per_m.push_back(item);
  }
  r["per_m"] = per_m;
  if (verdict.witness) r["witness"] = witness_json(*verdict.witness, Field::complex);

  assert_that(out, std::abs(perp - expected_perp) <= 1e-12, "perp(u, v) differs from sqrt(A delta)");
  assert_that(out, distance.distance <= bound + 1e-9, "measured distance exceeds 2 A delta");
  assert_that(out, verdict.kind == PRVerdictKind::passes_up_to_budget, "span{u, w} was found to fail phase retrieval");
  return out;
}

}  // namespace sprlat::cli
