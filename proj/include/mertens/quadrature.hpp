#pragma once

#include <functional>

namespace mertens {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // sum of |Kronrod - Gauss| over the final partition
    int intervals = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b]. The
// interval with the largest error estimate is bisected until the total
// estimate drops to `abs_tol`. Throws ConvergenceError (carrying the best
// estimate) when `max_intervals` is exhausted first.
QuadResult integrate_gk15(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          int max_intervals = 2000);

}  // namespace mertens
