#pragma once

#include <cmath>

namespace gatekit {

/// sin(x)/x, continuous at 0.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// 1 - sin(x)/x without cancellation for small x.
inline double one_minus_sinc(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        return x2 / 6.0 *
               (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))));
    }
    return 1.0 - std::sin(x) / x;
}

/// (1 - cos(x))/x via the half-angle identity; continuous at 0.
inline double one_minus_cos_over(double x) {
    if (x == 0.0) return 0.0;
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s / x;
}

/// (sin(x) - x*cos(x))/x^2, the moment integral kernel of t*sin(bt).
inline double sin_minus_xcos_over_x2(double x) {
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)));
    }
    return (std::sin(x) - x * std::cos(x)) / (x * x);
}

/// log of the binomial coefficient C(n, k).
inline double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace gatekit
