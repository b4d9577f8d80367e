// Test-only reference implementations, kept independent of the library
// code paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace testing_oracles {

// Adaptive Simpson quadrature with absolute tolerance.
inline double simpson_slice(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_slice(f, a, m, fa, flm, fm);
    const double right = simpson_slice(f, m, b, fm, frm, fb);
    if (depth <= 0) throw std::runtime_error("adaptive_simpson: recursion limit");
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson_slice(f, a, b, fa, fm, fb), tol, 48);
}

// Brute-force partial sum of 2F1(1/2, b; 3/2; z) with a fixed term count.
inline double hyp2f1_partial_sum(double b, double z, int terms) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= (0.5 + k) * (b + k) * z / ((1.5 + k) * (1.0 + k));
    }
    return sum;
}

} // namespace testing_oracles
