#include "sprlat/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace sprlat {

namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
};

Simplex make_simplex(const Objective& f, const Eigen::VectorXd& center, double center_value, double step,
                     int& evaluations) {
  const Eigen::Index n = center.size();
  Simplex s;
  s.points.reserve(n + 1);
  s.values.reserve(n + 1);
  s.points.push_back(center);
  s.values.push_back(center_value);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd p = center;
    p[i] += step;
    s.points.push_back(p);
    s.values.push_back(f(p));
    ++evaluations;
  }
  return s;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  MinimizeResult result;
  result.x = x0;
  result.value = f(x0);
  result.evaluations = 1;
  if (n == 0) return result;

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  double step = options.initial_step;
  int rebuilds_left = options.rebuilds;
  Simplex s = make_simplex(f, x0, result.value, step, result.evaluations);
  std::vector<std::size_t> order(n + 1);

  while (result.iterations < options.max_iterations) {
    ++result.iterations;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double diameter = 0.0;
    for (const auto& p : s.points) diameter = std::max(diameter, (p - s.points[best]).cwiseAbs().maxCoeff());
    const double spread = s.values[worst] - s.values[best];
    if (diameter < options.point_tolerance ||
        (spread <= options.value_tolerance * (1.0 + std::abs(s.values[best])) && diameter < 1e-6)) {
      if (rebuilds_left-- <= 0) break;
      step = std::max(10.0 * diameter, 1e-3 * options.initial_step);
      Eigen::VectorXd center = s.points[best];
      const double center_value = s.values[best];
      s = make_simplex(f, center, center_value, step, result.evaluations);
      continue;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i != worst) centroid += s.points[i];
    }
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + kReflect * (centroid - s.points[worst]);
    const double fr = f(reflected);
    ++result.evaluations;

    if (fr < s.values[best]) {
      const Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
      const double fe = f(expanded);
      ++result.evaluations;
      if (fe < fr) {
        s.points[worst] = expanded;
        s.values[worst] = fe;
      } else {
        s.points[worst] = reflected;
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr < s.values[second_worst]) {
      s.points[worst] = reflected;
      s.values[worst] = fr;
      continue;
    }

    const bool outside = fr < s.values[worst];
    const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + kContract * (reflected - centroid))
                                               : Eigen::VectorXd(centroid + kContract * (s.points[worst] - centroid));
    const double fc = f(contracted);
    ++result.evaluations;
    if (fc < (outside ? fr : s.values[worst])) {
      s.points[worst] = contracted;
      s.values[worst] = fc;
      continue;
    }

    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i == best) continue;
      s.points[i] = s.points[best] + kShrink * (s.points[i] - s.points[best]);
      s.values[i] = f(s.points[i]);
      ++result.evaluations;
    }
  }

  const auto it = std::min_element(s.values.begin(), s.values.end());
  const std::size_t best = static_cast<std::size_t>(it - s.values.begin());
  if (s.values[best] <= result.value) {
    result.x = s.points[best];
    result.value = s.values[best];
  }
  return result;
}

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double x_tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  ScalarMinimum out;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations = 2;
  while (b - a > x_tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }
  out.x = fc < fd ? c : d;
  out.value = std::min(fc, fd);
  // A minimum sitting on the boundary of the bracket is common for
  // monotone pieces; check the ends explicitly.
  for (double end : {lo, hi}) {
    const double fe = f(end);
    ++out.evaluations;
    if (fe < out.value) {
      out.value = fe;
      out.x = end;
    }
  }
  return out;
}

}  // namespace sprlat
