#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace cobos {

/// Thrown on quadrature non-convergence or NaN detection; message carries
/// the diagnostics (interval count, best error estimate).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G7, K15) on [a, b]. Bisects the interval with the
/// largest error estimate until |error| <= max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-12, double abs_tol = 1e-300,
                                    int max_intervals = 4000);

/// Convenience wrapper returning just the value.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-300);

}  // namespace cobos
