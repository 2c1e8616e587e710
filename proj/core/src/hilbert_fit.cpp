#include "sprlat/hilbert_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "sprlat/errors.hpp"
#include "sprlat/optimize.hpp"
#include "sprlat/sampling.hpp"

namespace sprlat {

double independence(const CplxVec& f, const CplxVec& g) {
  require_same_size(f.size(), g.size(), "independence");
  const double ff = f.squaredNorm();
  const double gg = g.squaredNorm();
  if (ff == 0.0 || gg == 0.0) return 0.0;
  const double fg = std::norm(g.dot(f));  // Eigen's dot conjugates the left operand
  return std::max(0.0, 1.0 - fg / (ff * gg));
}

CplxVec HilbertForm::combine(const Eigen::Vector2cd& c) const { return c[0] * f + c[1] * g; }

namespace {

struct Projection {
  Eigen::Vector2cd coeff;
  double residual = 0.0;
};

Projection project(const CplxVec& f, const CplxVec& g, const CplxVec& x) {
  require_same_size(f.size(), x.size(), "HilbertForm::coefficients");
  Eigen::MatrixXcd basis(f.size(), 2);
  basis.col(0) = f;
  basis.col(1) = g;
  Projection out;
  out.coeff = basis.colPivHouseholderQr().solve(x);
  const double scale = std::max(x.norm(), 1e-300);
  out.residual = (basis * out.coeff - x).norm() / scale;
  if (x.norm() == 0.0) out.residual = 0.0;
  return out;
}

}  // namespace

double HilbertForm::span_residual(const CplxVec& x) const { return project(f, g, x).residual; }

Eigen::Vector2cd HilbertForm::coefficients(const CplxVec& x) const {
  const Projection p = project(f, g, x);
  if (p.residual > 1e-8) {
    std::ostringstream msg;
    msg << "vector is not in the fitted span (relative residual " << p.residual << ")";
    throw PreconditionError(msg.str());
  }
  return p.coeff;
}

Complex HilbertForm::inner_coeff(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y) const {
  return y.dot(gram * x);  // y^H G x
}

double HilbertForm::norm_coeff(const Eigen::Vector2cd& c) const {
  return std::sqrt(std::max(0.0, inner_coeff(c, c).real()));
}

Complex HilbertForm::inner(const CplxVec& x, const CplxVec& y) const {
  return inner_coeff(coefficients(x), coefficients(y));
}

double HilbertForm::hnorm(const CplxVec& x) const { return norm_coeff(coefficients(x)); }

namespace {

// Per-sample data for the distortion objective: with c the sample and
// n = ||c0 f + c1 g||, (||.||_H / ||.||)^2 = G00 s0 + G11 s1 + 2 Re(G01 t).
struct SphereData {
  std::vector<double> s0, s1;
  std::vector<Complex> t;
  std::vector<Eigen::Vector2cd> points;
};

void add_sample(SphereData& d, const CplxVec& f, const CplxVec& g, const NormSpec& spec, const Eigen::Vector2cd& c) {
  const double n = norm(CplxVec(c[0] * f + c[1] * g), spec);
  const double inv = 1.0 / (n * n);
  d.points.push_back(c);
  d.s0.push_back(std::norm(c[0]) * inv);
  d.s1.push_back(std::norm(c[1]) * inv);
  d.t.push_back(std::conj(c[0]) * c[1] * inv);
}

SphereData sphere_data(const CplxVec& f, const CplxVec& g, const NormSpec& spec, Field field, int count) {
  SphereData d;
  for (const auto& c : coefficient_sphere(count, field)) add_sample(d, f, g, spec, c);
  return d;
}

// Over a finite sample set the fit is the linear program
//   minimize T  subject to  1 <= r_j(w) <= T,
// where r_j(w) = a_j . w is the squared ratio at sample j and w holds the
// real entries of the Gram matrix. Solved by a primal log-barrier method.
class MinimaxProgram {
 public:
  MinimaxProgram(const SphereData& d, Field field) : complex_(field == Field::complex) {
    const Eigen::Index n = static_cast<Eigen::Index>(d.s0.size());
    rows_.resize(n, complex_ ? 4 : 3);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(j);
      rows_(j, 0) = d.s0[k];
      rows_(j, 1) = d.s1[k];
      rows_(j, 2) = 2.0 * d.t[k].real();
      if (complex_) rows_(j, 3) = -2.0 * d.t[k].imag();
    }
  }

  const Eigen::MatrixXd& rows() const { return rows_; }

  Eigen::VectorXd weights(const Eigen::Matrix2cd& gram) const {
    Eigen::VectorXd w(rows_.cols());
    w[0] = gram(0, 0).real();
    w[1] = gram(1, 1).real();
    w[2] = gram(0, 1).real();
    if (complex_) w[3] = gram(0, 1).imag();
    return w;
  }

  Eigen::Matrix2cd gram(const Eigen::VectorXd& w) const {
    Eigen::Matrix2cd G;
    const Complex off{w[2], complex_ ? w[3] : 0.0};
    G << w[0], off, std::conj(off), w[1];
    return G;
  }

  /// Returns the optimal weights, starting from any w0 with all r_j > 0.
  Eigen::VectorXd solve(Eigen::VectorXd w) const {
    const Eigen::Index n = rows_.rows();
    const Eigen::Index dim = rows_.cols();
    Eigen::VectorXd r = rows_ * w;
    w *= 1.001 / r.minCoeff();
    r = rows_ * w;
    Eigen::VectorXd z(dim + 1);
    z.head(dim) = w;
    z[dim] = 1.001 * r.maxCoeff();

    const auto feasible = [&](const Eigen::VectorXd& x, Eigen::VectorXd& rx) {
      rx = rows_ * x.head(dim);
      return rx.minCoeff() > 1.0 && (x[dim] - rx.array()).minCoeff() > 0.0;
    };
    const auto barrier = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& rx, double t) {
      return t * x[dim] - (x[dim] - rx.array()).log().sum() - (rx.array() - 1.0).log().sum();
    };

    const double total = 2.0 * static_cast<double>(n);
    for (double t = total / z[dim]; total / t > 1e-11 * z[dim]; t *= 16.0) {
      for (int step = 0; step < 100; ++step) {
        r = rows_ * z.head(dim);
        const Eigen::ArrayXd upper = 1.0 / (z[dim] - r.array());
        const Eigen::ArrayXd lower = 1.0 / (r.array() - 1.0);
        Eigen::VectorXd grad(dim + 1);
        grad.head(dim) = rows_.transpose() * (upper - lower).matrix();
        grad[dim] = t - upper.sum();
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
        const Eigen::ArrayXd u2 = upper.square();
        const Eigen::ArrayXd l2 = lower.square();
        hess.topLeftCorner(dim, dim) = rows_.transpose() * (u2 + l2).matrix().asDiagonal() * rows_;
        hess.col(dim).head(dim) = -(rows_.transpose() * u2.matrix());
        hess.row(dim).head(dim) = hess.col(dim).head(dim).transpose();
        hess(dim, dim) = u2.sum();
        const Eigen::VectorXd dz = -hess.ldlt().solve(grad);
        const double decrement = -grad.dot(dz);
        if (!(decrement > 1e-12)) break;
        const double f0 = barrier(z, r, t);
        // Largest step keeping every slack positive, then backtracking.
        const Eigen::ArrayXd dr = (rows_ * dz.head(dim)).array();
        double alpha = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (dr[j] < 0.0) alpha = std::min(alpha, 0.99 * (r[j] - 1.0) / -dr[j]);
          if (dr[j] > dz[dim]) alpha = std::min(alpha, 0.99 * (z[dim] - r[j]) / (dr[j] - dz[dim]));
        }
        Eigen::VectorXd trial;
        Eigen::VectorXd rt;
        double f1 = f0;
        while (alpha > 1e-12) {
          trial = z + alpha * dz;
          f1 = feasible(trial, rt) ? barrier(trial, rt, t) : std::numeric_limits<double>::infinity();
          if (f1 <= f0 - 0.25 * alpha * decrement) break;
          alpha *= 0.5;
        }
        if (alpha <= 1e-12) break;
        z = trial;
        // Near the optimum the barrier value carries round-off of order eps * t.
        if (f0 - f1 <= 1e-14 * std::abs(f0)) break;
        if (decrement < 1e-9) break;
      }
    }
    return z.head(dim);
  }

 private:
  bool complex_;
  Eigen::MatrixXd rows_;
};

double ratio_at(const HilbertForm& form, const Eigen::Vector2cd& c) {
  const double n = norm(form.combine(c), form.norm);
  return form.norm_coeff(c) / n;
}

Eigen::Vector2cd point_from_angles(const Eigen::VectorXd& a, Field field) {
  if (field == Field::real) return Eigen::Vector2cd(Complex{std::cos(a[0]), 0.0}, Complex{std::sin(a[0]), 0.0});
  return bloch_point(a[0], a[1]);
}

Eigen::VectorXd angles_of(const Eigen::Vector2cd& c, Field field) {
  if (field == Field::real) {
    Eigen::VectorXd a(1);
    a[0] = std::atan2(c[1].real(), c[0].real());
    return a;
  }
  // Remove the phase of c0 so the point is in Bloch form.
  const Complex phase = std::abs(c[0]) > 0.0 ? std::conj(c[0]) / std::abs(c[0]) : Complex{1.0, 0.0};
  const Eigen::Vector2cd b = phase * c;
  Eigen::VectorXd a(2);
  a[0] = 2.0 * std::atan2(std::abs(b[1]), b[0].real());
  a[1] = std::arg(b[1]);
  return a;
}

struct Extreme {
  double ratio = 0.0;
  Eigen::Vector2cd point;
};

// Local extreme of the ratio started from the `candidates` most extreme
// samples; sign = +1 for the minimum, -1 for the maximum.
Extreme refine_extreme(const HilbertForm& form, const std::vector<Eigen::Vector2cd>& points,
                       const std::vector<double>& ratios, int candidates, double sign) {
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(candidates), idx.size());
  std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                    [&](std::size_t a, std::size_t b) { return sign * ratios[a] < sign * ratios[b]; });
  double best = sign * ratios[idx[0]];
  Eigen::Vector2cd best_point = points[idx[0]];
  const Objective objective = [&](const Eigen::VectorXd& a) {
    return sign * ratio_at(form, point_from_angles(a, form.field));
  };
  NelderMeadOptions opts;
  opts.max_iterations = 200;
  opts.initial_step = 0.05;
  opts.rebuilds = 1;
  for (std::size_t k = 0; k < take; ++k) {
    const MinimizeResult r = nelder_mead(objective, angles_of(points[idx[k]], form.field), opts);
    if (r.value < best) {
      best = r.value;
      best_point = point_from_angles(r.x, form.field);
    }
  }
  return Extreme{sign * best, best_point};
}

struct Profile {
  Extreme lo, hi;
};

Profile measure_profile(const HilbertForm& form, int sphere_samples, int refine_candidates) {
  const auto points = coefficient_sphere(sphere_samples, form.field);
  std::vector<double> ratios;
  ratios.reserve(points.size());
  for (const auto& c : points) ratios.push_back(ratio_at(form, c));
  return Profile{refine_extreme(form, points, ratios, refine_candidates, 1.0),
                 refine_extreme(form, points, ratios, refine_candidates, -1.0)};
}

}  // namespace

DistortionProfile measure_distortion(const HilbertForm& form, int sphere_samples, int refine_candidates) {
  const Profile p = measure_profile(form, sphere_samples, refine_candidates);
  return DistortionProfile{p.lo.ratio, p.hi.ratio};
}

HilbertForm fit_hilbert_norm(const CplxVec& f, const CplxVec& g, const NormSpec& spec, Field field,
                             const FitOptions& options) {
  require_same_size(f.size(), g.size(), "fit_hilbert_norm");
  spec.validate(static_cast<std::size_t>(f.size()));
  if (independence(f, g) <= kIndependenceFloor) {
    throw PreconditionError("fit_hilbert_norm: f and g are linearly dependent");
  }

  Eigen::MatrixXcd basis(f.size(), 2);
  basis.col(0) = f;
  basis.col(1) = g;

  HilbertForm form;
  form.f = f;
  form.g = g;
  form.field = field;
  form.norm = spec;

  // A weighted 2-norm is already Hilbert: B^H W B, K = 1.
  if (spec.p == 2.0) {
    Eigen::VectorXd weights = Eigen::VectorXd::Ones(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) weights[i] = spec.weight(static_cast<std::size_t>(i));
    form.gram = basis.adjoint() * weights.asDiagonal() * basis;
    if (field == Field::real) form.gram = form.gram.real().cast<Complex>().eval();
    form.distortion_K = 1.0;
    return form;
  }

  SphereData data = sphere_data(f, g, spec, field, options.sphere_samples);

  // Start from the Euclidean restriction B^H B.
  Eigen::Matrix2cd start_gram = basis.adjoint() * basis;
  if (field == Field::real) start_gram = start_gram.real().cast<Complex>();

  MinimaxProgram program(data, field);
  Eigen::VectorXd w = program.solve(program.weights(start_gram));
  form.gram = program.gram(w);

  // Exchange rounds: while the refined extremes beat the sampled optimum,
  // they join the sample set and the program is solved again. The best
  // measured form is kept.
  Profile profile = measure_profile(form, options.sphere_samples, options.refine_candidates);
  HilbertForm current = form;
  Profile current_profile = profile;
  for (int round = 0; round < options.exchange_rounds; ++round) {
    const Eigen::VectorXd r = program.rows() * w;
    const double sampled = r.maxCoeff() / r.minCoeff();
    const double measured = std::pow(current_profile.hi.ratio / current_profile.lo.ratio, 2);
    if (measured <= sampled * (1.0 + 1e-12)) break;
    add_sample(data, f, g, spec, current_profile.lo.point);
    add_sample(data, f, g, spec, current_profile.hi.point);
    program = MinimaxProgram(data, field);
    w = program.solve(w);
    current.gram = program.gram(w);
    current_profile = measure_profile(current, options.sphere_samples, options.refine_candidates);
    if (current_profile.hi.ratio / current_profile.lo.ratio < profile.hi.ratio / profile.lo.ratio) {
      form = current;
      profile = current_profile;
    }
  }

  form.gram /= profile.lo.ratio * profile.lo.ratio;
  form.distortion_K = profile.hi.ratio / profile.lo.ratio;
  if (form.distortion_K > options.acceptance) {
    std::ostringstream msg;
    msg << "Hilbert fit reached distortion " << form.distortion_K << " > " << options.acceptance;
    throw FitFailure(msg.str());
  }
  return form;
}

AlignedPair align_pair(const CplxVec& u, const CplxVec& v, const HilbertForm& form) {
  Eigen::Vector2cd cu = form.coefficients(u);
  Eigen::Vector2cd cv = form.coefficients(v);
  AlignedPair out;
  const CplxVec* first = &u;
  const CplxVec* second = &v;
  if (form.norm_coeff(cu) < form.norm_coeff(cv)) {
    std::swap(cu, cv);
    std::swap(first, second);
    out.swapped = true;
  }
  const Complex uv = form.inner_coeff(cu, cv);
  const double mag = std::abs(uv);
  out.mu = mag > 0.0 ? uv / mag : Complex{1.0, 0.0};
  out.f = *first + out.mu * *second;
  out.g = *first - out.mu * *second;
  out.inner_fg = std::max(0.0, form.inner_coeff(cu + out.mu * cv, cu - out.mu * cv).real());
  return out;
}

ReductionResult orthogonal_reduce(const CplxVec& f, const CplxVec& g, const HilbertForm& form) {
  require_same_size(f.size(), g.size(), "orthogonal_reduce");
  if (independence(f, g) <= kIndependenceFloor) {
    throw PreconditionError("orthogonal_reduce: f and g are linearly dependent");
  }
  const Eigen::Vector2cd cf = form.coefficients(f);
  const Eigen::Vector2cd cg = form.coefficients(g);
  const double nf = form.norm_coeff(cf);
  const double ng = form.norm_coeff(cg);
  const Complex fg = form.inner_coeff(cf, cg);
  const double scale_tol = 1e-9 * nf * ng;
  if (std::abs(fg.imag()) > scale_tol || fg.real() < -scale_tol) {
    std::ostringstream msg;
    msg << "orthogonal_reduce: <f,g>_H must be real and nonnegative, got " << fg.real() << " + " << fg.imag() << "i";
    throw PreconditionError(msg.str());
  }
  const double inner = std::max(0.0, fg.real());
  const Eigen::Vector2cd cs = cf + cg;
  const double S = form.inner_coeff(cs, cs).real();
  const double disc = 1.0 - 4.0 * inner / S;
  if (disc < -1e-9) {
    throw InvariantViolation("orthogonal_reduce: negative discriminant (4<f,g>_H > ||f+g||_H^2)");
  }
  ReductionResult out;
  out.inner_before = inner;
  // (1 - sqrt(1 - x)) / 2 written without the cancellation for small x.
  out.R = 2.0 * inner / (S * (1.0 + std::sqrt(std::max(0.0, disc))));
  const CplxVec shift = out.R * (f + g);
  out.f_prime = f - shift;
  out.g_prime = g - shift;

  const Eigen::Vector2cd cf2 = cf - out.R * cs;
  const Eigen::Vector2cd cg2 = cg - out.R * cs;
  const double denom = form.norm_coeff(cf2) * form.norm_coeff(cg2);
  out.orthogonality_residual = denom > 0.0 ? std::abs(form.inner_coeff(cf2, cg2)) / denom : 0.0;
  if (out.orthogonality_residual > 1e-10) {
    std::ostringstream msg;
    msg << "orthogonal_reduce: <f',g'>_H residual " << out.orthogonality_residual;
    throw InvariantViolation(msg.str());
  }

  const RealVec gap_before = (modulus(f) - modulus(g)).cwiseAbs();
  const RealVec gap_after = (modulus(out.f_prime) - modulus(out.g_prime)).cwiseAbs();
  const double scale = std::max({1.0, f.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff()});
  if (((gap_after - gap_before).array() > 1e-12 * scale).any()) {
    throw InvariantViolation("orthogonal_reduce: | |f'| - |g'| | exceeds | |f| - |g| |");
  }
  const double diff = ((out.f_prime - out.g_prime) - (f - g)).cwiseAbs().maxCoeff();
  if (diff > 8.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw InvariantViolation("orthogonal_reduce: f' - g' differs from f - g");
  }
  return out;
}

ReductionResult align_and_reduce(const CplxVec& u, const CplxVec& v, const HilbertForm& form) {
  const AlignedPair aligned = align_pair(u, v, form);
  ReductionResult out = orthogonal_reduce(aligned.f, aligned.g, form);
  out.mu = aligned.mu;
  out.swapped = aligned.swapped;
  return out;
}

}  // namespace sprlat
