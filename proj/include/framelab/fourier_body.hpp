#pragma once

#include <span>
#include <vector>

#include "framelab/convex_body.hpp"

namespace framelab {

// One evaluation of the indicator transform split into the oscillatory main
// term and its remainder: exact = main_term + error_term identically.
struct FourierEvaluation {
    std::vector<double> xi;
    double exact = 0.0;
    double main_term = 0.0;
    double error_term = 0.0;
};

// Exact Fourier transform of the indicator of K at xi (the transform is
// real since K is symmetric). For the ball of radius r0,
//   ft(xi) = r0^d (r0 |xi|)^{-d/2} J_{d/2}(2 pi r0 |xi|),
// and an ellipsoid K = T B reduces to the ball by
//   ft_K(xi) = |det T| ft_B(T xi).
// ft(0) is the volume of K.
double ft_indicator_exact(const ConvexBody& body, std::span<const double> xi);

struct FtQuadratureResult {
    double value = 0.0;      // cosine integral over K
    double sine_part = 0.0;  // must vanish by symmetry; asserted <= tol
    double error_bound = 0.0;
    long evals = 0;
};

// Independent oracle: evaluates int_K cos(2 pi x.xi) dx by adaptive product
// quadrature (innermost dimension integrated in closed form) to absolute
// accuracy tol, tol >= 1e-10. Throws quadrature_budget_error (carrying the
// best estimate and the achieved bound) if the node budget runs out, and
// domain_error if the sine part fails its symmetry bound.
double ft_indicator_quadrature(const ConvexBody& body, std::span<const double> xi, double tol);
FtQuadratureResult ft_indicator_quadrature_full(const ConvexBody& body, std::span<const double> xi,
                                                double tol);

// Stationary-phase main term
//   (1/pi) kappa^{-1/2}(xi/|xi|) sin(2 pi (rho*(xi) - (d-1)/8)) |xi|^{-(d+1)/2}.
// The 1/pi amplitude is pinned by matching the exact ball transform against
// the large-argument Bessel expansion; fit_herz_amplitude re-derives it per
// body. Requires |xi| >= 1 (asymptotic regime guard).
double herz_main_term(const ConvexBody& body, std::span<const double> xi);

struct ErrorScanRow {
    double r = 0.0;
    double exact = 0.0;
    double main_term = 0.0;
    double error_term = 0.0;
    double scaled_error = 0.0;  // |exact - main| * r^{(d+3)/2}
};

struct ErrorScan {
    std::vector<ErrorScanRow> rows;
    double max_scaled_error = 0.0;
};

// Samples radii uniformly in [r_min, r_max] along a fixed direction and
// reports the remainder scaled by r^{(d+3)/2}; boundedness of the scaled
// column witnesses the expected remainder decay.
ErrorScan herz_error_scan(const ConvexBody& body, double r_min, double r_max, int samples,
                          std::span<const double> direction = {});

// Least-squares fit of the amplitude constant c in
//   exact(r) ~= c * kappa^{-1/2} sin(2 pi (rho* - (d-1)/8)) r^{-(d+1)/2}
// over uniformly sampled radii in [r_min, r_max]. Converges to 1/pi.
double fit_herz_amplitude(const ConvexBody& body, double r_min, double r_max, int samples,
                          std::span<const double> direction = {});

}  // namespace framelab
