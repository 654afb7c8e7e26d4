#include "framelab/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace framelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Ascending power series. Safe while the largest term stays near the result
// scale; callers keep z small (z <= 0.5 here), where the terms decrease
// essentially from the start for every order used in this project.
double series_j(double nu, double z) {
    const double half = 0.5 * z;
    double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    const double m = -half * half;
    for (int k = 0; k < 200; ++k) {
        term *= m / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

// Hankel large-argument expansion
//   J_nu(z) ~ sqrt(2/(pi z)) (P cos chi - Q sin chi),  chi = z - nu pi/2 - pi/4,
// truncated at the smallest term. At z >= 35 the smallest term is below
// 1e-30 for every order used here, so the truncation error is negligible
// against double rounding.
double hankel_j(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1e308;
    for (int k = 1; k <= 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * z * k);
        if (std::fabs(term) >= prev) break;  // asymptotic tail started growing
        prev = std::fabs(term);
        const int mod = k % 4;
        if (mod == 1) q += term;
        else if (mod == 2) p -= term;
        else if (mod == 3) q -= term;
        else p += term;
        if (std::fabs(term) < 1e-19) break;
    }
    const double chi = z - nu * (0.5 * kPi) - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Integer order by backward (Miller) recurrence, normalized with
// J_0 + 2 J_2 + 2 J_4 + ... = 1. Stable for all z; used in the mid range
// where neither the series nor the Hankel expansion reaches 1e-12.
double miller_jn(int n, double z) {
    const int start = n + static_cast<int>(std::ceil(1.2 * z)) + 34;
    double jp = 0.0;      // J_{k+1}
    double jc = 1e-30;    // J_k (arbitrary scale)
    double result = (n == start) ? jc : 0.0;
    double norm = (start % 2 == 0) ? 2.0 * jc : 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm = (2.0 * k / z) * jc - jp;  // J_{k-1}
        jp = jc;
        jc = jm;
        const int idx = k - 1;
        if (idx == n) result = jc;
        if (idx > 0 && idx % 2 == 0) norm += 2.0 * jc;
        if (idx == 0) norm += jc;
        if (std::fabs(jc) > 1e250) {
            jc *= 1e-250;
            jp *= 1e-250;
            result *= 1e-250;
            norm *= 1e-250;
        }
    }
    return result / norm;
}

// Half-integer order J_{n+1/2} = sqrt(2z/pi) j_n(z) through the spherical
// functions j_n, whose closed forms are trigonometric.
double half_integer_j(int n, double z) {
    const double j0 = std::sin(z) / z;
    if (n == 0) return std::sqrt(2.0 * z / kPi) * j0;
    const double j1 = j0 / z - std::cos(z) / z;
    if (n == 1) return std::sqrt(2.0 * z / kPi) * j1;

    double jn;
    if (z >= static_cast<double>(n)) {
        // Upward recurrence from the closed forms; stable in the
        // oscillatory regime z >= n.
        double a = j0, b = j1;
        for (int k = 1; k < n; ++k) {
            const double c = (2.0 * k + 1.0) / z * b - a;
            a = b;
            b = c;
        }
        jn = b;
    } else {
        // Below the turning point: downward recurrence, normalized against
        // whichever of j_0, j_1 is larger in magnitude.
        const int start = n + static_cast<int>(std::ceil(1.2 * z)) + 34;
        double sp = 0.0, sc = 1e-30;
        double got_n = 0.0, got_1 = 0.0, got_0 = 0.0;
        for (int k = start; k >= 1; --k) {
            const double sm = (2.0 * k + 1.0) / z * sc - sp;  // j_{k-1}
            sp = sc;
            sc = sm;
            const int idx = k - 1;
            if (idx == n) got_n = sc;
            if (idx == 0) {
                got_0 = sc;
                got_1 = sp;
            }
            if (std::fabs(sc) > 1e250) {
                sc *= 1e-250;
                sp *= 1e-250;
                got_n *= 1e-250;
                got_1 *= 1e-250;
                got_0 *= 1e-250;
            }
        }
        const double scale = (std::fabs(j0) >= std::fabs(j1)) ? j0 / got_0 : j1 / got_1;
        jn = got_n * scale;
    }
    return std::sqrt(2.0 * z / kPi) * jn;
}

void check_order(BesselOrder order) {
    if (order.twice_order < 0) throw std::domain_error("bessel: order must be >= 0");
}

}  // namespace

double bessel_j(BesselOrder order, double z) {
    check_order(order);
    if (!std::isfinite(z) || z < 0.0) throw std::domain_error("bessel_j: z must be finite and >= 0");
    const double nu = order.value();
    if (z == 0.0) return order.twice_order == 0 ? 1.0 : 0.0;
    if (z < 0.5) return series_j(nu, z);
    if (z >= 35.0) return hankel_j(nu, z);
    if (order.is_half_integer()) return half_integer_j((order.twice_order - 1) / 2, z);
    return miller_jn(order.twice_order / 2, z);
}

double bessel_j_zero(BesselOrder order, int k) {
    check_order(order);
    if (k < 1) throw std::domain_error("bessel_j_zero: k must be >= 1");
    const double nu = order.value();
    const double mu = 4.0 * nu * nu;

    auto f = [&](double z) { return bessel_j(order, z); };

    double lo, hi;
    if (nu <= 8.0) {
        // McMahon expansion with two correction terms; its error is well
        // under the bracket half-width 0.5 for nu <= 8 and every k >= 1.
        const double beta = (k + 0.5 * nu - 0.25) * kPi;
        const double b8 = 8.0 * beta;
        double c = beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
        lo = std::max(c - 0.5, nu > 0.0 ? nu : 0.25);
        hi = c + 0.5;
    } else {
        // Large order, small k: march from the turning point. Zero spacing
        // exceeds pi, so a pi/4 step cannot skip a sign change.
        double z0 = std::max(nu, 0.5);
        double f0 = f(z0);
        int found = 0;
        const double step = 0.25 * kPi;
        lo = hi = z0;
        while (found < k) {
            const double z1 = z0 + step;
            const double f1 = f(z1);
            if ((f0 < 0.0) != (f1 < 0.0)) {
                ++found;
                lo = z0;
                hi = z1;
            }
            z0 = z1;
            f0 = f1;
            if (z0 > nu + (k + 4.0) * 2.0 * kPi) throw std::runtime_error("bessel_j_zero: march failed");
        }
    }

    double flo = f(lo), fhi = f(hi);
    if ((flo < 0.0) == (fhi < 0.0)) {
        // Bracket missed (should not happen in the supported range): rescan
        // a widened window in small slices and take the sign change nearest
        // the predicted location.
        const double center = 0.5 * (lo + hi);
        bool ok = false;
        for (double w = 1.0; w <= 3.0 && !ok; w += 1.0) {
            const int slices = 128;
            double a = std::max(center - w, 1e-8);
            double fa = f(a);
            for (int i = 1; i <= slices; ++i) {
                const double b = a + 2.0 * w / slices;
                const double fb = f(b);
                if ((fa < 0.0) != (fb < 0.0)) {
                    lo = a;
                    hi = b;
                    flo = fa;
                    ok = true;
                    break;
                }
                a = b;
                fa = fb;
            }
        }
        if (!ok) throw std::runtime_error("bessel_j_zero: bracketing failed");
    }

    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double bessel_asymptotic_main(BesselOrder order, double z) {
    check_order(order);
    if (!std::isfinite(z) || z <= 0.0) throw std::domain_error("bessel_asymptotic_main: z must be > 0");
    const double chi = z - order.value() * (0.5 * kPi) - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * z)) * std::cos(chi);
}

}  // namespace framelab
