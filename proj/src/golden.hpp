// golden.hpp — golden-section maximization on a bracket (internal)

#pragma once

#include <cmath>
#include <utility>

namespace tfd::detail {

// Maximizes f on [lo, hi] assuming a single interior maximum; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_maximize(F&& f, double lo, double hi, double x_tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 200 && (b - a) > x_tol; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

} // namespace tfd::detail
