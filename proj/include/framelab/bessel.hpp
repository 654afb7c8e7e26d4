#pragma once

namespace framelab {

// Order nu = twice_order / 2. Only integer and half-integer orders arise in
// this project (nu = d/2 for dimension d >= 2), so the order is stored
// exactly as an integer and never as a float.
struct BesselOrder {
    int twice_order = 0;

    double value() const { return 0.5 * twice_order; }
    bool is_half_integer() const { return (twice_order & 1) != 0; }
};

// J_nu(z) for z >= 0.
//
// Evaluation strategy (internal): ascending series for small z, backward
// (Miller) recurrence for integer orders in the mid range, trigonometric
// closed forms propagated by recurrence for half-integer orders, and the
// large-argument Hankel expansion beyond z = 35. Each switchover has a
// cross-validation band covered by the test suite.
//
// Accuracy: absolute error <= 1e-12 for z <= 50, relative error (against
// the oscillation envelope sqrt(2/(pi z))) <= 1e-10 for z <= 1e4.
double bessel_j(BesselOrder order, double z);

// k-th positive zero of J_nu, k >= 1, to absolute accuracy 1e-10; strictly
// increasing in k. Brackets each zero around the McMahon expansion value
// and bisects; falls back to a sign-change march from z = nu when the
// expansion is not trustworthy (large nu, small k).
double bessel_j_zero(BesselOrder order, int k);

// Leading large-argument term sqrt(2/(pi z)) * cos(z - nu pi/2 - pi/4).
//
// With z = 2 pi r and nu = d/2 this equals sqrt(2/(pi z)) multiplied by
//
//   cos(2 pi r - d pi/4 - pi/4) = sin(2 pi (r - (d-1)/8)),
//
// since cos(u - pi/4) = sin(u + pi/4) with u = 2 pi (r - d/8). That
// identity is what reconciles the cosine phase here with the sine phase
// used by the Herz main term in fourier_body.
double bessel_asymptotic_main(BesselOrder order, double z);

}  // namespace framelab
