#include "sprlat/spr_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sprlat/errors.hpp"
#include "sprlat/optimize.hpp"
#include "sprlat/sampling.hpp"

namespace sprlat {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string to_string(PRVerdictKind kind) {
  return kind == PRVerdictKind::fails_with_witness ? "fails_with_witness" : "passes_up_to_budget";
}

Eigen::Index Subspace::coefficient_params() const {
  return ambient.field == Field::complex ? 2 * rank() : rank();
}

CplxVec Subspace::element(const Eigen::Ref<const Eigen::VectorXd>& params) const {
  CplxVec out = CplxVec::Zero(static_cast<Eigen::Index>(ambient.dim));
  const bool cplx = ambient.field == Field::complex;
  for (Eigen::Index j = 0; j < rank(); ++j) {
    const Complex a = cplx ? Complex{params[2 * j], params[2 * j + 1]} : Complex{params[j], 0.0};
    out += a * basis[static_cast<std::size_t>(j)];
  }
  return out;
}

void Subspace::validate() const {
  ambient.validate();
  if (basis.empty()) throw PreconditionError("subspace basis must contain at least one vector");
  const auto n = static_cast<Eigen::Index>(ambient.dim);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != n) {
      std::ostringstream msg;
      msg << "basis vector " << j << " has dimension " << basis[j].size() << ", ambient dimension is " << n;
      throw DimensionMismatch(msg.str());
    }
    if (!all_finite(basis[j])) throw PreconditionError("basis vectors must have finite entries");
    if (ambient.field == Field::real && basis[j].imag().cwiseAbs().maxCoeff() != 0.0) {
      throw PreconditionError("a real subspace cannot have complex basis entries");
    }
  }
  Eigen::MatrixXcd b(n, rank());
  for (Eigen::Index j = 0; j < rank(); ++j) b.col(j) = basis[static_cast<std::size_t>(j)].normalized();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(b.adjoint() * b);
  if (eig.eigenvalues().minCoeff() <= 1e-12) throw PreconditionError("subspace basis is linearly dependent");
}

PairWitness measure_pair(const CplxVec& u, const CplxVec& v, const Ambient& ambient) {
  PairWitness w;
  w.u = u;
  w.v = v;
  w.separation = unimodular_distance(u, v, ambient.norm, ambient.field).distance;
  w.disjointness = disjointness(u, v, ambient.norm);
  w.perp = perp_measure(u, v, ambient.norm);
  return w;
}

namespace {

// Maps a point of R^{2P} to the normalized pair (e(a)/||e(a)||, e(b)/||e(b)||).
struct NormalizedPair {
  CplxVec u, v;
  bool ok = false;
};

NormalizedPair normalized_pair(const Subspace& E, const Eigen::VectorXd& x) {
  const Eigen::Index P = E.coefficient_params();
  NormalizedPair out;
  out.u = E.element(x.head(P));
  out.v = E.element(x.tail(P));
  const double nu = norm(out.u, E.ambient.norm);
  const double nv = norm(out.v, E.ambient.norm);
  if (!(nu > 1e-300) || !(nv > 1e-300)) return out;
  out.u /= nu;
  out.v /= nv;
  out.ok = true;
  return out;
}

Eigen::VectorXd random_start(const Subspace& E, std::uint64_t seed, int restart) {
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(restart));
  Eigen::VectorXd x = random_real(2 * E.coefficient_params(), rng);
  return x / x.norm();
}

NelderMeadOptions local_options(const SearchBudget& budget) {
  NelderMeadOptions nm;
  nm.max_iterations = budget.iterations;
  nm.initial_step = 0.3;
  nm.rebuilds = 3;
  return nm;
}

constexpr double kBadObjective = 1e6;

}  // namespace

SPREstimate estimate_spr_constant(const Subspace& E, const SearchBudget& budget, std::uint64_t seed) {
  E.validate();
  if (budget.restarts < 1 || budget.iterations < 1) throw PreconditionError("search budget must be positive");
  const Eigen::Index P = E.coefficient_params();
  const NormSpec& spec = E.ambient.norm;
  const Field field = E.ambient.field;

  SPREstimate est;
  est.seed = seed;
  double best = -1.0;
  bool unbounded = false;

  // Evaluates a pair, keeps the best ratio seen, and returns the
  // minimization target denominator / numerator.
  const auto consider = [&](const CplxVec& f, const CplxVec& g, RatioReport* out) {
    const RatioReport r = spr_ratio(f, g, spec, field);
    ++est.evaluations;
    if (out) *out = r;
    if (r.flag == RatioFlag::degenerate) return kBadObjective;
    const double ratio = r.flag == RatioFlag::infinite ? kInf : r.ratio;
    if (ratio > best) {
      best = ratio;
      est.f = f;
      est.g = g;
      if (ratio > kUnboundedRatio) unbounded = true;
    }
    if (r.flag == RatioFlag::infinite) return 0.0;
    if (r.numerator <= zero_tolerance(f, g, spec)) return kBadObjective;
    return r.denominator / r.numerator;
  };

  // (f, 0) has ratio exactly 1, which is a lower bound for every subspace.
  {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(P);
    a[0] = 1.0;
    consider(E.element(a), CplxVec::Zero(static_cast<Eigen::Index>(E.ambient.dim)), nullptr);
  }

  const Objective ratio_objective = [&](const Eigen::VectorXd& x) {
    if (unbounded) return 0.0;
    const double nx = x.norm();
    if (!(nx > 1e-300)) return kBadObjective;
    const Eigen::VectorXd y = x / nx;
    return consider(E.element(y.head(P)), E.element(y.tail(P)), nullptr);
  };
  // Smooth proxy that vanishes exactly on pairs with |f| = |g|; used to pin
  // down phase retrieval failures to machine precision.
  const Objective modulus_proxy = [&](const Eigen::VectorXd& x) {
    if (unbounded) return 0.0;
    const double nx = x.norm();
    if (!(nx > 1e-300)) return kBadObjective;
    const Eigen::VectorXd y = x / nx;
    const CplxVec f = E.element(y.head(P));
    const CplxVec g = E.element(y.tail(P));
    RatioReport r;
    consider(f, g, &r);
    if (r.flag == RatioFlag::degenerate || r.numerator <= zero_tolerance(f, g, spec)) return kBadObjective;
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      const double d = std::norm(f[i]) - std::norm(g[i]);
      s += spec.weight(static_cast<std::size_t>(i)) * d * d;
    }
    return s / std::pow(r.numerator, 4);
  };

  const NelderMeadOptions nm = local_options(budget);
  for (int r = 0; r < budget.restarts && !unbounded; ++r) {
    const double before = best;
    const MinimizeResult local = nelder_mead(ratio_objective, random_start(E, seed, r), nm);
    ++est.restarts_run;
    const double restart_best = 1.0 / std::max(local.value, 1e-300);
    if (!unbounded && restart_best > 100.0 && restart_best >= before) nelder_mead(modulus_proxy, local.x, nm);
  }

  // Revalidate the witness from scratch.
  est.report = spr_ratio(est.f, est.g, spec, field);
  est.c_lower = est.report.flag == RatioFlag::infinite ? kInf : est.report.ratio;
  est.unbounded = est.report.flag == RatioFlag::infinite || est.c_lower > kUnboundedRatio;
  return est;
}

PairWitness search_almost_disjoint(const Subspace& E, const SearchBudget& budget, std::uint64_t seed) {
  E.validate();
  if (budget.restarts < 1 || budget.iterations < 1) throw PreconditionError("search budget must be positive");
  const NormSpec& spec = E.ambient.norm;

  double best = kInf;
  CplxVec best_u, best_v;
  const auto track = [&](const NormalizedPair& p) {
    const double d = disjointness(p.u, p.v, spec);
    if (d < best) {
      best = d;
      best_u = p.u;
      best_v = p.v;
    }
    return d;
  };
  const Objective objective = [&](const Eigen::VectorXd& x) {
    const NormalizedPair p = normalized_pair(E, x);
    return p.ok ? track(p) : kBadObjective;
  };
  // sum_i w_i |u_i|^2 |v_i|^2 is smooth and vanishes exactly on disjoint pairs.
  const Objective product_proxy = [&](const Eigen::VectorXd& x) {
    const NormalizedPair p = normalized_pair(E, x);
    if (!p.ok) return kBadObjective;
    track(p);
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.u.size(); ++i) {
      s += spec.weight(static_cast<std::size_t>(i)) * std::norm(p.u[i]) * std::norm(p.v[i]);
    }
    return s;
  };

  const NelderMeadOptions nm = local_options(budget);
  for (int r = 0; r < budget.restarts; ++r) {
    const MinimizeResult local = nelder_mead(objective, random_start(E, seed, r), nm);
    if (local.value < 0.05) nelder_mead(product_proxy, local.x, nm);
  }
  return measure_pair(best_u, best_v, E.ambient);
}

PerpSearchResult search_perp_pair(const Subspace& E, double m, const SearchBudget& budget, std::uint64_t seed) {
  E.validate();
  if (!(m >= 0.0)) throw PreconditionError("search_perp_pair: m must be nonnegative");
  if (budget.restarts < 1 || budget.iterations < 1 || budget.penalty_rounds < 1) {
    throw PreconditionError("search budget must be positive");
  }
  const NormSpec& spec = E.ambient.norm;
  const Field field = E.ambient.field;

  PerpSearchResult out;
  out.m = m;
  double best = kInf;
  CplxVec best_u, best_v;

  struct Measured {
    double perp = 0.0;
    double shortfall = 0.0;  // max(0, m - separation)
  };
  const auto measure = [&](const NormalizedPair& p) {
    Measured r;
    r.perp = perp_measure(p.u, p.v, spec);
    ++out.evaluations;
    if (m > 0.0) {
      // Separation only matters if this pair could become the best feasible one,
      // or to drive the penalty; both need it.
      const double sep = unimodular_distance(p.u, p.v, spec, field).distance;
      r.shortfall = std::max(0.0, m - sep);
    }
    if (r.shortfall == 0.0 && r.perp < best) {
      best = r.perp;
      best_u = p.u;
      best_v = p.v;
      out.feasible = true;
    }
    return r;
  };

  double rho = 10.0;
  const Objective penalized = [&](const Eigen::VectorXd& x) {
    const NormalizedPair p = normalized_pair(E, x);
    if (!p.ok) return kBadObjective;
    const Measured r = measure(p);
    return r.perp + rho * r.shortfall * r.shortfall;
  };
  // sum_i w_i Re(u_i conj v_i)^2: smooth, zero exactly on perpendicular pairs.
  const Objective product_proxy = [&](const Eigen::VectorXd& x) {
    const NormalizedPair p = normalized_pair(E, x);
    if (!p.ok) return kBadObjective;
    const Measured r = measure(p);
    const RealVec rp = re_prod(p.u, p.v);
    double s = 0.0;
    for (Eigen::Index i = 0; i < rp.size(); ++i) s += spec.weight(static_cast<std::size_t>(i)) * rp[i] * rp[i];
    return s + rho * r.shortfall * r.shortfall;
  };

  const NelderMeadOptions nm = local_options(budget);
  for (int r = 0; r < budget.restarts; ++r) {
    Eigen::VectorXd x = random_start(E, seed, r);
    const double before = best;
    for (int round = 0; round < budget.penalty_rounds; ++round) {
      rho = 10.0 * std::pow(100.0, round);
      x = nelder_mead(penalized, x, nm).x;
    }
    if (best < 1e-2 && best <= before) nelder_mead(product_proxy, x, nm);
  }

  if (out.feasible) {
    out.witness = measure_pair(best_u, best_v, E.ambient);
  } else {
    out.witness.perp = kInf;
    out.witness.separation = 0.0;
  }
  return out;
}

PRVerdict check_pr(const Subspace& E, std::span<const double> m_grid, const SearchBudget& budget, std::uint64_t seed,
                   double eps_fail) {
  if (m_grid.empty()) throw PreconditionError("check_pr: m_grid must be nonempty");
  PRVerdict verdict;
  verdict.eps_fail = eps_fail;
  verdict.m_grid.assign(m_grid.begin(), m_grid.end());
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    const double m = m_grid[i];
    const PerpSearchResult res = search_perp_pair(E, m, budget, mix_seed(seed, i));
    verdict.feasible.push_back(res.feasible);
    verdict.min_perp.push_back(res.feasible ? res.witness.perp : kInf);
    if (res.feasible && res.witness.perp < eps_fail && res.witness.separation >= m - 1e-6 &&
        verdict.kind == PRVerdictKind::passes_up_to_budget) {
      verdict.kind = PRVerdictKind::fails_with_witness;
      verdict.witness = res.witness;
      verdict.witness_m = m;
    }
  }
  return verdict;
}

}  // namespace sprlat
