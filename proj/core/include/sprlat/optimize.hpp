#pragma once

// Derivative-free local minimizers shared by the searches and the Hilbert fit.
// The objectives here (p = 1 and p = inf norms, max/min distortion ratios)
// are only Lipschitz, so nothing in this header uses gradients.

#include <functional>

#include <Eigen/Core>

namespace sprlat {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct NelderMeadOptions {
  int max_iterations = 500;
  double initial_step = 0.25;
  /// Stop (or rebuild the simplex) once the spread of simplex values and the
  /// simplex diameter both fall below these.
  double value_tolerance = 1e-15;
  double point_tolerance = 1e-13;
  /// Rebuild the simplex around the best vertex this many times after
  /// convergence; this escapes the premature collapses Nelder-Mead is known for.
  int rebuilds = 2;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

MinimizeResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const NelderMeadOptions& options = {});

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search on [lo, hi]; exact for unimodal f, a local
/// minimum otherwise. The endpoints are evaluated too.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double x_tolerance);

}  // namespace sprlat
