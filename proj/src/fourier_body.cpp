#include "framelab/fourier_body.hpp"

#include <cmath>
#include <stdexcept>

#include "framelab/bessel.hpp"
#include "framelab/errors.hpp"
#include "framelab/quadrature.hpp"

namespace framelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Unit-ball transform u^{-d/2} J_{d/2}(2 pi u) at u = |xi|, via the series
// limit for tiny u (the direct quotient is 0/0 there).
double ft_unit_ball(int d, double u) {
    const double vol = unit_ball_volume(d);
    if (u < 1e-6) {
        // vol * (1 - z^2/(2(d+2)) + z^4/(8(d+2)(d+4))), z = 2 pi u.
        const double z2 = 4.0 * kPi * kPi * u * u;
        return vol * (1.0 - z2 / (2.0 * (d + 2)) + z2 * z2 / (8.0 * (d + 2.0) * (d + 4.0)));
    }
    return std::pow(u, -0.5 * d) * bessel_j(BesselOrder{d}, 2.0 * kPi * u);
}

}  // namespace

double ft_indicator_exact(const ConvexBody& body, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != body.dim)
        throw std::domain_error("ft_indicator_exact: dimension mismatch");
    for (double x : xi)
        if (!std::isfinite(x)) throw std::domain_error("ft_indicator_exact: xi must be finite");
    // |T xi| with T = diag(semi_axes) equals rho*(xi).
    const double u = support(body, xi);
    return body.axes_product() * ft_unit_ball(body.dim, u);
}

FtQuadratureResult ft_indicator_quadrature_full(const ConvexBody& body, std::span<const double> xi,
                                                double tol) {
    if (static_cast<int>(xi.size()) != body.dim)
        throw std::domain_error("ft_indicator_quadrature: dimension mismatch");
    if (!(tol >= 1e-10)) throw std::domain_error("ft_indicator_quadrature: tol must be >= 1e-10");

    // Change of variables y = T^{-1} x maps K to the unit ball and turns the
    // frequency into eta_i = a_i xi_i; the Jacobian is prod a_i.
    const int d = body.dim;
    std::vector<double> eta(d);
    for (int i = 0; i < d; ++i) eta[i] = body.semi_axes[i] * xi[i];
    const double jac = body.axes_product();

    // Innermost dimension in closed form over the symmetric slice [-h, h]:
    //   int cos(2 pi (c + t q)) dt = 2 cos(2 pi c) sinc-like kernel,
    //   int sin(2 pi (c + t q)) dt = 2 sin(2 pi c) * same kernel.
    const double q = eta[d - 1];
    auto slice_kernel = [q](double h) {
        if (q == 0.0) return 2.0 * h;
        return std::sin(2.0 * kPi * h * q) / (kPi * q);
    };

    FtQuadratureResult out;
    long evals = 0;
    const long budget = 4000000;

    if (d == 2) {
        auto fc = [&](double y) {
            ++evals;
            const double h = std::sqrt(std::max(0.0, 1.0 - y * y));
            return std::cos(2.0 * kPi * y * eta[0]) * slice_kernel(h);
        };
        auto fs = [&](double y) {
            ++evals;
            const double h = std::sqrt(std::max(0.0, 1.0 - y * y));
            return std::sin(2.0 * kPi * y * eta[0]) * slice_kernel(h);
        };
        const double inner_tol = tol / (jac * 4.0);
        IntegralResult rc = integrate_adaptive(fc, -1.0, 1.0, inner_tol, budget);
        IntegralResult rs = integrate_adaptive(fs, -1.0, 1.0, inner_tol, budget);
        out.value = jac * rc.value;
        out.sine_part = jac * rs.value;
        out.error_bound = jac * (rc.error + rs.error);
        out.evals = evals;
        if (!rc.converged || !rs.converged)
            throw quadrature_budget_error("ft_indicator_quadrature: node budget exhausted",
                                          out.value, out.error_bound);
    } else if (d == 3) {
        // Outer over y1, middle over y2 (adaptive), inner over y3 closed form.
        const double mid_tol = tol * 0.02;
        double middle_err = 0.0;
        bool middle_ok = true;
        auto outer = [&](bool cosine, double y1) {
            const double r = std::sqrt(std::max(0.0, 1.0 - y1 * y1));
            const double c1 = y1 * eta[0];
            auto f = [&](double y2) {
                ++evals;
                const double h = std::sqrt(std::max(0.0, r * r - y2 * y2));
                const double c = c1 + y2 * eta[1];
                const double phase = cosine ? std::cos(2.0 * kPi * c) : std::sin(2.0 * kPi * c);
                return phase * slice_kernel(h);
            };
            IntegralResult res = integrate_adaptive(f, -r, r, mid_tol, 60000);
            middle_err = std::max(middle_err, res.error);
            middle_ok = middle_ok && res.converged;
            return res.value;
        };
        const double outer_tol = tol / (jac * 4.0);
        IntegralResult rc = integrate_adaptive([&](double y) { return outer(true, y); }, -1.0, 1.0,
                                               outer_tol, budget);
        IntegralResult rs = integrate_adaptive([&](double y) { return outer(false, y); }, -1.0, 1.0,
                                               outer_tol, budget);
        out.value = jac * rc.value;
        out.sine_part = jac * rs.value;
        // Middle-level error enters the outer integrand pointwise; spread it
        // over the integration width.
        out.error_bound = jac * (rc.error + rs.error + 4.0 * middle_err);
        out.evals = evals;
        if (!rc.converged || !rs.converged || !middle_ok)
            throw quadrature_budget_error("ft_indicator_quadrature: node budget exhausted",
                                          out.value, out.error_bound);
    } else {
        throw std::domain_error("ft_indicator_quadrature: implemented for d in {2, 3}");
    }

    if (std::fabs(out.sine_part) > tol)
        throw std::domain_error("ft_indicator_quadrature: sine part exceeds symmetry bound");
    return out;
}

double ft_indicator_quadrature(const ConvexBody& body, std::span<const double> xi, double tol) {
    return ft_indicator_quadrature_full(body, xi, tol).value;
}

double herz_main_term(const ConvexBody& body, std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != body.dim)
        throw std::domain_error("herz_main_term: dimension mismatch");
    const double r = norm2(xi);
    if (!(r >= 1.0)) throw std::domain_error("herz_main_term: requires |xi| >= 1");

    std::vector<double> omega(xi.begin(), xi.end());
    for (double& w : omega) w /= r;
    const double kappa = curvature(body, omega);
    const double rho = support(body, xi);
    const int d = body.dim;
    const double phase = std::sin(2.0 * kPi * (rho - (d - 1) / 8.0));
    return (1.0 / kPi) / std::sqrt(kappa) * phase * std::pow(r, -0.5 * (d + 1));
}

ErrorScan herz_error_scan(const ConvexBody& body, double r_min, double r_max, int samples,
                          std::span<const double> direction) {
    if (!(r_min >= 1.0) || !(r_min < r_max))
        throw std::domain_error("herz_error_scan: need 1 <= r_min < r_max");
    if (samples < 2) throw std::domain_error("herz_error_scan: need samples >= 2");

    std::vector<double> dir(body.dim, 0.0);
    if (direction.empty()) {
        dir[0] = 1.0;
    } else {
        if (static_cast<int>(direction.size()) != body.dim)
            throw std::domain_error("herz_error_scan: direction dimension mismatch");
        const double n = norm2(direction);
        if (n == 0.0) throw std::domain_error("herz_error_scan: zero direction");
        for (int i = 0; i < body.dim; ++i) dir[i] = direction[i] / n;
    }

    ErrorScan scan;
    scan.rows.reserve(samples);
    std::vector<double> xi(body.dim);
    for (int i = 0; i < samples; ++i) {
        const double r = r_min + (r_max - r_min) * i / (samples - 1.0);
        for (int t = 0; t < body.dim; ++t) xi[t] = r * dir[t];
        ErrorScanRow row;
        row.r = r;
        row.exact = ft_indicator_exact(body, xi);
        row.main_term = herz_main_term(body, xi);
        row.error_term = row.exact - row.main_term;
        row.scaled_error = std::fabs(row.error_term) * std::pow(r, 0.5 * (body.dim + 3));
        scan.max_scaled_error = std::max(scan.max_scaled_error, row.scaled_error);
        scan.rows.push_back(row);
    }
    return scan;
}

double fit_herz_amplitude(const ConvexBody& body, double r_min, double r_max, int samples,
                          std::span<const double> direction) {
    std::vector<double> dir(body.dim, 0.0);
    if (direction.empty()) {
        dir[0] = 1.0;
    } else {
        if (static_cast<int>(direction.size()) != body.dim)
            throw std::domain_error("fit_herz_amplitude: direction dimension mismatch");
        const double n = norm2(direction);
        if (n == 0.0) throw std::domain_error("fit_herz_amplitude: zero direction");
        for (int i = 0; i < body.dim; ++i) dir[i] = direction[i] / n;
    }

    const double kappa = curvature(body, dir);
    const int d = body.dim;
    double num = 0.0, den = 0.0;
    std::vector<double> xi(body.dim);
    for (int i = 0; i < samples; ++i) {
        const double r = r_min + (r_max - r_min) * i / (samples - 1.0);
        for (int t = 0; t < body.dim; ++t) xi[t] = r * dir[t];
        const double rho = support(body, xi);
        const double g = 1.0 / std::sqrt(kappa) * std::sin(2.0 * kPi * (rho - (d - 1) / 8.0)) *
                         std::pow(r, -0.5 * (d + 1));
        const double exact = ft_indicator_exact(body, xi);
        num += exact * g;
        den += g * g;
    }
    if (den == 0.0) throw std::domain_error("fit_herz_amplitude: degenerate sample set");
    return num / den;
}

}  // namespace framelab
