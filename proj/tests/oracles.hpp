#pragma once

// Test-side oracles, deliberately written against the textbook definitions
// rather than the library code paths they check.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

// Ascending power series for J_nu, full double accuracy for z <= ~10.
inline double series_bessel_j(double nu, double z) {
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double half = 0.5 * z;
    double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 0; k < 300; ++k) {
        term *= -(half * half) / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-19 * std::fabs(sum)) break;
    }
    return sum;
}

// Bisection root finder on [a, b]; requires a sign change.
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double width = 1e-13) {
    double fa = f(a), fb = f(b);
    if ((fa < 0.0) == (fb < 0.0)) throw std::runtime_error("oracle bisect: no sign change");
    while (b - a > width) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Recursive adaptive Simpson; independent of the Gauss-Kronrod integrator
// in the library.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) return left + right + delta / 15.0;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 48) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace oracles
