#ifndef LATK_TEST_ORACLES_HPP
#define LATK_TEST_ORACLES_HPP

// Independent brute-force references used by the tests. These deliberately
// avoid the library's evaluation machinery: plain truncated double sums and
// centered finite differences only.

#include <cmath>
#include <functional>

namespace oracle {

inline double quad_form(double x, double y, long m, long n) {
    const double u = double(n) + double(m) * x;
    return double(m) * m * y + u * u / y;
}

// theta2(alpha; z) by raw summation over |m|, |n| <= R.
inline double theta2_brute(double alpha, double x, double y, long R) {
    double s = 0.0;
    for (long m = -R; m <= R; ++m)
        for (long n = -R; n <= R; ++n) s += std::exp(-3.141592653589793238462643383279502884 * alpha * quad_form(x, y, m, n));
    return s;
}

// kernel(alpha; z) by raw summation.
inline double kernel_brute(double alpha, double x, double y, long R) {
    double s = 0.0;
    for (long m = -R; m <= R; ++m)
        for (long n = -R; n <= R; ++n) {
            const double q = quad_form(x, y, m, n);
            s += q * std::exp(-3.141592653589793238462643383279502884 * alpha * q);
        }
    return s;
}

inline double central_diff(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline double central_diff2(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

} // namespace oracle

#endif
