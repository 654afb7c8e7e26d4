#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "framelab/convex_body.hpp"
#include "framelab/decay_profile.hpp"
#include "framelab/pointset.hpp"

namespace framelab {

// Dense symmetric matrix, row-major.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline constexpr std::size_t kGramCap = 4000;

// Normalized Gram matrix of the exponential system on L^2(K):
//   G_{ij} = ft_K(a_i - a_j) / ft_K(0),
// real symmetric with unit diagonal (the normalization by |K| makes the
// finite-section Riesz bounds dimensionless). Caps at 4000 points.
Matrix gram_matrix(const PointSet& A, const ConvexBody& body);

// Full spectrum by cyclic Jacobi sweeps; returns eigenvalues ascending.
// Sweeps run until the off-diagonal Frobenius mass drops below tol^2, which
// bounds every eigenvalue error by tol.
std::vector<double> jacobi_eigenvalues(Matrix G, double tol);

// (lambda_min, lambda_max) to absolute accuracy tol: full Jacobi solve for
// n <= 512, Lanczos with full reorthogonalization and Ritz-residual
// certificates for larger matrices. Throws domain_error for non-symmetric
// input (asymmetry above 1e-12) and resource_error on non-convergence.
std::pair<double, double> extreme_eigenvalues(const Matrix& G, double tol);

struct GramSpectrum {
    std::size_t size = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double offdiag_max = 0.0;  // largest |G_ij|, i != j
};

GramSpectrum gram_spectrum(const PointSet& A, const ConvexBody& body, double tol = 1e-10);

enum class RieszVerdict { orthogonal_like, frame_obstructed, frame_plausible };

struct RieszReport {
    GramSpectrum spectrum;
    ProfileSummary profile;
    DensityEstimate density;
    RieszVerdict verdict = RieszVerdict::frame_plausible;
    bool lambda_min_above_desk_threshold = false;  // lambda_min > 0.1
    double desk_lambda_threshold = 0.1;
    // Finite sections bound nothing about the infinite system; every report
    // carries this caveat verbatim so downstream output cannot drop it.
    std::string note;
};

// Combines the finite-section spectrum, the empirical decay profiles (p
// given, pins capped at 64 evenly spaced members for large sets) and the
// counting-density trend into one verdict:
//   orthogonal-like   : off-diagonal mass is negligible,
//   frame-obstructed  : decay hypothesis empirically holds,
//   frame-plausible   : decay hypothesis fails.
RieszReport riesz_report(const PointSet& A, const ConvexBody& body, double p = 2.0);

const char* riesz_verdict_name(RieszVerdict v);

}  // namespace framelab
