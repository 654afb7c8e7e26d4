#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace framelab {

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error bound
    long evals = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b] to absolute
// tolerance abs_tol. Deterministic: the subdivision order depends only on
// the integrand values. Does not throw on budget exhaustion; callers decide
// whether a non-converged result is an error.
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, long max_evals = 500000);

// Convenience wrapper targeting a relative tolerance (with an absolute
// floor for integrals near zero).
IntegralResult integrate_adaptive_rel(const std::function<double(double)>& f, double a, double b,
                                      double rel_tol, double abs_floor = 1e-300,
                                      long max_evals = 500000);

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace framelab
