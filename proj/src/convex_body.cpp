#include "framelab/convex_body.hpp"

#include <cmath>
#include <stdexcept>

#include "framelab/quadrature.hpp"

namespace framelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dim(const ConvexBody& body, std::size_t n) {
    if (static_cast<std::size_t>(body.dim) != n)
        throw std::domain_error("convex_body: vector dimension does not match the body");
}

}  // namespace

ConvexBody ConvexBody::ball(int dim, double radius) {
    if (dim < 2) throw std::domain_error("ConvexBody: dim must be >= 2");
    if (!(radius > 0.0)) throw std::domain_error("ConvexBody: radius must be > 0");
    ConvexBody b;
    b.kind = Kind::ball;
    b.dim = dim;
    b.semi_axes.assign(dim, radius);
    return b;
}

ConvexBody ConvexBody::ellipsoid(std::vector<double> semi_axes) {
    if (semi_axes.size() < 2) throw std::domain_error("ConvexBody: need dim >= 2 semi-axes");
    bool all_equal = true;
    for (double a : semi_axes) {
        if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("ConvexBody: semi-axes must be positive");
        all_equal = all_equal && a == semi_axes.front();
    }
    ConvexBody b;
    b.kind = all_equal ? Kind::ball : Kind::ellipsoid;
    b.dim = static_cast<int>(semi_axes.size());
    b.semi_axes = std::move(semi_axes);
    return b;
}

double unit_ball_volume(int dim) {
    return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double ConvexBody::volume() const { return unit_ball_volume(dim) * axes_product(); }

double ConvexBody::axes_product() const {
    double p = 1.0;
    for (double a : semi_axes) p *= a;
    return p;
}

double support(const ConvexBody& body, std::span<const double> xi) {
    check_dim(body, xi.size());
    double s = 0.0;
    for (int i = 0; i < body.dim; ++i) {
        const double t = body.semi_axes[i] * xi[i];
        s += t * t;
    }
    return std::sqrt(s);
}

double minkowski(const ConvexBody& body, std::span<const double> x) {
    check_dim(body, x.size());
    double s = 0.0;
    for (int i = 0; i < body.dim; ++i) {
        const double t = x[i] / body.semi_axes[i];
        s += t * t;
    }
    return std::sqrt(s);
}

double curvature(const ConvexBody& body, std::span<const double> omega) {
    check_dim(body, omega.size());
    double n2 = 0.0;
    for (double w : omega) n2 += w * w;
    if (n2 == 0.0) throw std::domain_error("curvature: direction must be nonzero");
    const double inv = 1.0 / std::sqrt(n2);  // tolerate slightly non-unit input

    double s = 0.0;
    for (int i = 0; i < body.dim; ++i) {
        const double t = body.semi_axes[i] * omega[i] * inv;
        s += t * t;
    }
    const double rho = std::sqrt(s);
    const double prod = body.axes_product();
    return std::pow(rho, body.dim + 1) / (prod * prod);
}

double dual_volume(const ConvexBody& body) {
    // {rho* <= 1} is the ellipsoid with semi-axes 1/a_i.
    return unit_ball_volume(body.dim) / body.axes_product();
}

std::vector<SurfaceNode> surface_quadrature(const ConvexBody& body, int level) {
    if (level < 1) throw std::domain_error("surface_quadrature: level must be >= 1");
    if (body.dim != 2 && body.dim != 3)
        throw std::domain_error("surface_quadrature: implemented for d in {2, 3}");

    std::vector<double> b(body.dim);  // dual semi-axes
    for (int i = 0; i < body.dim; ++i) b[i] = 1.0 / body.semi_axes[i];

    auto unit_normal = [&](const std::vector<double>& x) {
        // grad rho*(x) is proportional to (a_i^2 x_i).
        std::vector<double> nrm(body.dim);
        double len = 0.0;
        for (int i = 0; i < body.dim; ++i) {
            nrm[i] = body.semi_axes[i] * body.semi_axes[i] * x[i];
            len += nrm[i] * nrm[i];
        }
        len = std::sqrt(len);
        for (double& v : nrm) v /= len;
        return nrm;
    };

    std::vector<SurfaceNode> nodes;
    if (body.dim == 2) {
        const int n = 8 * level;
        nodes.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * kPi * i / n;
            const double c = std::cos(th), s = std::sin(th);
            SurfaceNode node;
            node.point = {b[0] * c, b[1] * s};
            const double speed = std::hypot(b[0] * s, b[1] * c);
            node.weight = speed * 2.0 * kPi / n;
            node.normal = unit_normal(node.point);
            nodes.push_back(std::move(node));
        }
    } else {
        const int nu = 4 * level;
        const int nphi = 8 * level;
        std::vector<double> u, wu;
        gauss_legendre(nu, u, wu);
        nodes.reserve(static_cast<std::size_t>(nu) * nphi);
        const double bprod = b[0] * b[1] * b[2];
        for (int i = 0; i < nu; ++i) {
            const double ci = u[i];
            const double si = std::sqrt(std::max(0.0, 1.0 - ci * ci));
            for (int j = 0; j < nphi; ++j) {
                const double ph = 2.0 * kPi * j / nphi;
                SurfaceNode node;
                node.point = {b[0] * si * std::cos(ph), b[1] * si * std::sin(ph), b[2] * ci};
                // Area element of the spherical parametrization:
                // dsigma = b1 b2 b3 sqrt(sum x_i^2 / b_i^4) du dphi.
                double q = 0.0;
                for (int t = 0; t < 3; ++t) {
                    const double r = node.point[t] / (b[t] * b[t]);
                    q += r * r;
                }
                node.weight = bprod * std::sqrt(q) * wu[i] * (2.0 * kPi / nphi);
                node.normal = unit_normal(node.point);
                nodes.push_back(std::move(node));
            }
        }
    }
    return nodes;
}

}  // namespace framelab
