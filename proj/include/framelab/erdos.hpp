#pragma once

#include <cstddef>
#include <vector>

#include "framelab/convex_body.hpp"
#include "framelab/pointset.hpp"

namespace framelab {

// One residual entry: `value` snapped to the progression c1 k + c2.
// For pair residuals value = rho*(a_i - a_j) and distance = |a_i - a_j|;
// for two-pair residuals value = rho*(a0 - a) - rho*(a1 - a), the entry
// indices are (index of a, index of a), and distance = |a|.
struct PairResidual {
    std::size_t i = 0;
    std::size_t j = 0;
    double distance = 0.0;
    double value = 0.0;
    long long nearest_k = 0;
    double residual = 0.0;         // value - (c1 k + c2), in [-c1/2, c1/2]
    double scaled_residual = 0.0;  // residual * distance^scaling_exponent
};

struct ResidualReport {
    std::vector<PairResidual> pairs;
    double max_residual = 0.0;      // max |residual|
    double scaling_exponent = 1.0;  // power of distance applied to residual
    double c1 = 0.5;
    double c2 = 0.0;
};

// Residuals of rho*(a - a') against the grid k/2 + (d-1)/8 for every pair;
// scaled residuals carry exponent 1 (the expected O(1/distance) law).
ResidualReport residual_one_pair(const PointSet& A, const ConvexBody& body);

// Residuals of rho*(a0 - a) - rho*(a1 - a) against the grid k/2 for every
// other point a; scaled residuals carry exponent 2.
ResidualReport residual_two_pair(const PointSet& A, std::size_t a0, std::size_t a1,
                                 const ConvexBody& body);

// Residuals of rho*(a - a') against the progression c1 k + c2, c1 > 0.
ResidualReport general_residuals(const PointSet& A, const ConvexBody& body, double c1, double c2);

struct Collinearity {
    bool collinear = false;
    double max_deviation = 0.0;
};

// Line fit through the centroid along the dominant principal direction of
// the centered second-moment matrix; max_deviation is the largest
// point-to-line distance. Sets of size <= 2 are collinear with deviation 0.
Collinearity collinearity(const PointSet& A, double tol);

struct ClassifyTols {
    double residual_abs = 1e-6;    // tail residual floor for "pass"
    double residual_ratio = 0.5;   // or: tail max below ratio * head max
    double collinear = 1e-9;
    std::size_t report_threshold = 64;  // set size that triggers the tension flag
};

enum class ErdosVerdict { consistent_line, finiteness_forced, residuals_fail };

struct ClassifyReport {
    ErdosVerdict verdict = ErdosVerdict::residuals_fail;
    int d_mod_4 = 0;
    bool residuals_pass = false;
    double residual_head_max = 0.0;  // max |residual| over the closest third of pairs
    double residual_tail_max = 0.0;  // max |residual| over the farthest third
    double max_residual = 0.0;
    Collinearity line;
    // d != 1 mod 4 with a large set passing the residual checks: the
    // finiteness conclusion says such sets stop growing.
    bool tension_flag = false;
};

// Finiteness classification. The asymptotic hypotheses are checked as trend
// assertions over distance-sorted pairs (finite data cannot certify a
// limit); the verdicts are proxies and labeled as such in CLI output.
ClassifyReport classify(const PointSet& A, const ConvexBody& body, const ClassifyTols& tols = {});

const char* erdos_verdict_name(ErdosVerdict v);

}  // namespace framelab
