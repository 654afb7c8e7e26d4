#pragma once

#include <span>
#include <vector>

namespace framelab {

// Origin-symmetric smooth convex body: a ball or an axis-aligned ellipsoid.
// Both have exact Fourier transforms, so everything downstream can be
// checked against closed forms.
struct ConvexBody {
    enum class Kind { ball, ellipsoid };

    Kind kind = Kind::ball;
    int dim = 0;
    std::vector<double> semi_axes;  // size dim; all equal for a ball

    static ConvexBody ball(int dim, double radius = 1.0);
    static ConvexBody ellipsoid(std::vector<double> semi_axes);

    double volume() const;        // |K|
    double axes_product() const;  // prod a_i = |det T| for K = T B^d
};

// Node of a quadrature rule on the rho*-unit sphere S = {rho*(x) = 1}
// (the boundary of the dual body).
struct SurfaceNode {
    std::vector<double> point;
    double weight = 0.0;
    std::vector<double> normal;  // outward unit normal of S at point
};

// Support function rho*(xi) = sup_{x in K} x . xi = sqrt(sum a_i^2 xi_i^2).
double support(const ConvexBody& body, std::span<const double> xi);

// Minkowski gauge of K itself: inf{t > 0 : x/t in K} = sqrt(sum x_i^2/a_i^2).
double minkowski(const ConvexBody& body, std::span<const double> x);

// Gaussian curvature of the boundary of K at the unique point whose outward
// unit normal is omega. Closed form for ellipsoids:
//   kappa(omega) = rho*(omega)^(d+1) / (prod a_i)^2,
// obtained from kappa = (prod a_i)^{-2} (sum x_i^2/a_i^4)^{-(d+1)/2} at the
// boundary point x(omega)_i = a_i^2 omega_i / rho*(omega) solving the normal
// map. For a ball of radius r this reduces to r^{-(d-1)}.
double curvature(const ConvexBody& body, std::span<const double> omega);

// Volume of the dual unit ball {u : rho*(u) <= 1}.
double dual_volume(const ConvexBody& body);

// Quadrature on S = {rho* = 1}; weighted sums of node values converge to
// surface integrals as level grows (spectrally, the parametrizations being
// analytic). d = 2 uses the equal-parameter trapezoid rule on the boundary
// parametrization; d = 3 a Gauss-Legendre x trapezoid product grid in
// spherical parameters. Node counts: 8*level (d=2), 4*level x 8*level (d=3).
std::vector<SurfaceNode> surface_quadrature(const ConvexBody& body, int level);

// Volume of the d-dimensional unit ball.
double unit_ball_volume(int dim);

}  // namespace framelab
