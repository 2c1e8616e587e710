#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library, so agreement is a genuine cross-check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double weight(const rvec& w, std::size_t i) { return w.empty() ? 1.0 : w[i]; }

/// Weighted lp norm of nonnegative entries.
inline double lp(const rvec& x, double p, const rvec& w = {}) {
  if (p == inf) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, weight(w, i) * x[i]);
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += weight(w, i) * std::pow(x[i], p);
  return std::pow(s, 1.0 / p);
}

inline rvec moduli(const cvec& z) {
  rvec out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::abs(z[i]);
  return out;
}

inline double norm(const cvec& z, double p, const rvec& w = {}) { return lp(moduli(z), p, w); }

inline double distance_at(const cvec& f, const cvec& g, double theta, double p, const rvec& w) {
  const cplx lambda = std::polar(1.0, theta);
  rvec m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = std::abs(f[i] - lambda * g[i]);
  return lp(m, p, w);
}

struct PhaseGrid {
  double coarse = inf;   // best value on the uniform grid
  double refined = inf;  // after a second-level grid around the best cells
};

/// min over |lambda| = 1 of ||f - lambda g|| on a uniform grid of `points`
/// angles, then a uniform sub-grid of `sub` points across the two cells
/// around each of the `cells` best grid points.
inline PhaseGrid phase_distance(const cvec& f, const cvec& g, double p, const rvec& w = {}, int points = 100000,
                                int sub = 2000, int cells = 8) {
  const double step = 2.0 * std::numbers::pi / points;
  std::vector<std::pair<double, int>> values(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) values[static_cast<std::size_t>(k)] = {distance_at(f, g, k * step, p, w), k};
  const auto take = static_cast<std::ptrdiff_t>(std::min(cells, points));
  std::partial_sort(values.begin(), values.begin() + take, values.end());
  PhaseGrid out;
  out.coarse = values.front().first;
  out.refined = out.coarse;
  for (std::ptrdiff_t c = 0; c < take; ++c) {
    const double centre = values[static_cast<std::size_t>(c)].second * step;
    for (int j = 0; j <= sub; ++j) {
      const double t = centre - step + 2.0 * step * j / sub;
      out.refined = std::min(out.refined, distance_at(f, g, t, p, w));
    }
  }
  return out;
}

/// Real two-dimensional subspace span{b0, b1}: unit vectors along a grid of
/// coefficient directions (cos a, sin a), a in [0, pi) with spacing `step`.
inline std::vector<rvec> unit_directions(const rvec& b0, const rvec& b1, double p, double step) {
  // Euclidean orthonormal basis of the plane, so the angle grid is uniform.
  const std::size_t n = b0.size();
  rvec e0 = b0, e1 = b1;
  double n0 = 0.0, dot = 0.0, n1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) n0 += e0[i] * e0[i];
  for (auto& x : e0) x /= std::sqrt(n0);
  for (std::size_t i = 0; i < n; ++i) dot += e0[i] * e1[i];
  for (std::size_t i = 0; i < n; ++i) e1[i] -= dot * e0[i];
  for (std::size_t i = 0; i < n; ++i) n1 += e1[i] * e1[i];
  for (auto& x : e1) x /= std::sqrt(n1);

  std::vector<rvec> out;
  for (double a = 0.0; a < std::numbers::pi; a += step) {
    rvec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(a) * e0[i] + std::sin(a) * e1[i];
    rvec ax(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ax[i] = std::abs(x[i]);
    const double n = lp(ax, p);
    for (auto& xi : x) xi /= n;
    out.push_back(std::move(x));
  }
  return out;
}

struct RealGrid {
  double min_disjointness = inf;  // min || |u| ^ |v| || over grid pairs
  double max_ratio = 0.0;         // max of the stability ratio over (u+v, u-v)
};

/// Coefficient-grid search over pairs of unit vectors of a real plane. The
/// ratio is evaluated from its definition, min(||f-g||, ||f+g||) / || |f|-|g| ||.
inline RealGrid real_plane_grid(const rvec& b0, const rvec& b1, double p, double step = 1e-3) {
  const auto dirs = unit_directions(b0, b1, p, step);
  const std::size_t n = b0.size();
  RealGrid out;
  rvec meet(n), diff(n), sum(n), gap(n);
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      const rvec& u = dirs[a];
      const rvec& v = dirs[b];
      for (std::size_t i = 0; i < n; ++i) meet[i] = std::min(std::abs(u[i]), std::abs(v[i]));
      out.min_disjointness = std::min(out.min_disjointness, lp(meet, p));
      for (std::size_t i = 0; i < n; ++i) {
        const double f = u[i] + v[i];
        const double g = u[i] - v[i];
        diff[i] = std::abs(f - g);
        sum[i] = std::abs(f + g);
        gap[i] = std::abs(std::abs(f) - std::abs(g));
      }
      const double den = lp(gap, p);
      if (den > 0.0) out.max_ratio = std::max(out.max_ratio, std::min(lp(diff, p), lp(sum, p)) / den);
    }
  }
  return out;
}

}  // namespace oracle
