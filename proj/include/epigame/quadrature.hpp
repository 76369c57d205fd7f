#pragma once

#include <functional>

namespace epigame {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    int evaluations = 0;
};

// Adaptive 15-point Gauss-Kronrod quadrature on [a, b]. Bisects the interval
// with the largest error estimate until the total estimate drops below
// max(abs_tol, rel_tol * |value|). Throws NumericalFailureError if the
// interval budget runs out first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals = 2000);

} // namespace epigame
