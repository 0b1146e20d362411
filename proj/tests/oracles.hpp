#pragma once

// Test-only numerical oracles, kept independent of the library's closed-form
// code paths.

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson_slice(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)> &f, double a, double b, double fa,
                                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(a, m, fa, flm, fm);
    const double right = simpson_slice(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

// Adaptive Simpson quadrature, absolute tolerance `tol`.
inline double integrate(const std::function<double(double)> &f, double a, double b, double tol = 1e-10) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson_slice(a, b, fa, fm, fb), tol, 40);
}

// Normalized Gaussian wavefunction of position spread delta.
inline double gaussian_wavefunction(double q, double center, double delta) {
    const double norm = std::pow(2.0 * M_PI * delta * delta, -0.25);
    const double z = q - center;
    return norm * std::exp(-z * z / (4.0 * delta * delta));
}

inline double normal_pdf(double q, double mean, double delta) {
    const double z = (q - mean) / delta;
    return std::exp(-0.5 * z * z) / (delta * std::sqrt(2.0 * M_PI));
}

}  // namespace oracles
