#include "framelab/erdos.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <stdexcept>

#include "framelab/gram.hpp"

namespace framelab {

namespace {

// Nearest grid index with ties to even, via round-half-even on the scaled
// coordinate. rint honors the default FE_TONEAREST mode, which is exactly
// banker's rounding on ties.
long long nearest_grid_k(double value, double c1, double c2) {
    return static_cast<long long>(std::rint((value - c2) / c1));
}

PairResidual make_residual(std::size_t i, std::size_t j, double distance, double value, double c1,
                           double c2, double exponent) {
    PairResidual r;
    r.i = i;
    r.j = j;
    r.distance = distance;
    r.value = value;
    r.nearest_k = nearest_grid_k(value, c1, c2);
    r.residual = value - (c1 * static_cast<double>(r.nearest_k) + c2);
    r.scaled_residual = r.residual * std::pow(distance, exponent);
    return r;
}

double euclid(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double d = a[t] - b[t];
        s += d * d;
    }
    return std::sqrt(s);
}

ResidualReport pair_residuals(const PointSet& A, const ConvexBody& body, double c1, double c2,
                              double exponent) {
    if (A.size() < 2) throw std::domain_error("residuals: need at least two points");
    if (A.dim() != body.dim) throw std::domain_error("residuals: dimension mismatch");
    if (!(c1 > 0.0)) throw std::domain_error("residuals: c1 must be > 0");

    ResidualReport report;
    report.c1 = c1;
    report.c2 = c2;
    report.scaling_exponent = exponent;
    report.pairs.reserve(A.size() * (A.size() - 1) / 2);
    std::vector<double> diff(A.dim());
    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto pi = A.point(i);
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            const auto pj = A.point(j);
            for (int t = 0; t < A.dim(); ++t) diff[t] = pi[t] - pj[t];
            const double dist = euclid(pi, pj);
            const double rho = support(body, diff);
            report.pairs.push_back(make_residual(i, j, dist, rho, c1, c2, exponent));
            report.max_residual = std::max(report.max_residual, std::fabs(report.pairs.back().residual));
        }
    }
    return report;
}

}  // namespace

ResidualReport residual_one_pair(const PointSet& A, const ConvexBody& body) {
    return pair_residuals(A, body, 0.5, (body.dim - 1) / 8.0, 1.0);
}

ResidualReport general_residuals(const PointSet& A, const ConvexBody& body, double c1, double c2) {
    return pair_residuals(A, body, c1, c2, 1.0);
}

ResidualReport residual_two_pair(const PointSet& A, std::size_t a0, std::size_t a1,
                                 const ConvexBody& body) {
    if (A.size() < 3) throw std::domain_error("residual_two_pair: need at least three points");
    if (a0 >= A.size() || a1 >= A.size() || a0 == a1)
        throw std::domain_error("residual_two_pair: invalid anchor indices");
    if (A.dim() != body.dim) throw std::domain_error("residual_two_pair: dimension mismatch");

    ResidualReport report;
    report.c1 = 0.5;
    report.c2 = 0.0;
    report.scaling_exponent = 2.0;
    const auto p0 = A.point(a0);
    const auto p1 = A.point(a1);
    std::vector<double> d0(A.dim()), d1(A.dim()), origin(A.dim(), 0.0);
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (i == a0 || i == a1) continue;
        const auto p = A.point(i);
        for (int t = 0; t < A.dim(); ++t) {
            d0[t] = p0[t] - p[t];
            d1[t] = p1[t] - p[t];
        }
        const double value = support(body, d0) - support(body, d1);
        const double dist = euclid(p, origin);  // the law scales with |a|
        report.pairs.push_back(make_residual(i, i, dist, value, 0.5, 0.0, 2.0));
        report.max_residual = std::max(report.max_residual, std::fabs(report.pairs.back().residual));
    }
    return report;
}

Collinearity collinearity(const PointSet& A, double tol) {
    if (A.empty()) throw std::domain_error("collinearity: empty set");
    if (tol < 0.0) throw std::domain_error("collinearity: tol must be >= 0");
    Collinearity out;
    if (A.size() <= 2) {
        out.collinear = true;
        return out;
    }

    const int d = A.dim();
    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto p = A.point(i);
        for (int t = 0; t < d; ++t) centroid[t] += p[t];
    }
    for (double& c : centroid) c /= static_cast<double>(A.size());

    Matrix m(d);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto p = A.point(i);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m.at(r, c) += (p[r] - centroid[r]) * (p[c] - centroid[c]);
    }

    // Dominant principal direction by power iteration on the d x d moment
    // matrix (deterministic start; d is small).
    std::vector<double> v(d, 0.0);
    // Start from the largest-diagonal axis to avoid an orthogonal start.
    int axis = 0;
    for (int t = 1; t < d; ++t)
        if (m.at(t, t) > m.at(axis, axis)) axis = t;
    v[axis] = 1.0;
    std::vector<double> w(d);
    for (int it = 0; it < 200; ++it) {
        for (int r = 0; r < d; ++r) {
            double s = 0.0;
            for (int c = 0; c < d; ++c) s += m.at(r, c) * v[c];
            w[r] = s;
        }
        double n = 0.0;
        for (double x : w) n += x * x;
        n = std::sqrt(n);
        if (n == 0.0) break;  // all points coincide with the centroid
        double delta = 0.0;
        for (int r = 0; r < d; ++r) {
            const double nv = w[r] / n;
            delta = std::max(delta, std::fabs(nv - v[r]));
            v[r] = nv;
        }
        if (delta < 1e-15) break;
    }

    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto p = A.point(i);
        double proj = 0.0, norm2 = 0.0;
        for (int t = 0; t < d; ++t) {
            const double rel = p[t] - centroid[t];
            proj += rel * v[t];
            norm2 += rel * rel;
        }
        const double dev2 = std::max(0.0, norm2 - proj * proj);
        out.max_deviation = std::max(out.max_deviation, std::sqrt(dev2));
    }
    out.collinear = out.max_deviation <= tol;
    return out;
}

ClassifyReport classify(const PointSet& A, const ConvexBody& body, const ClassifyTols& tols) {
    ClassifyReport report;
    report.d_mod_4 = ((A.dim() % 4) + 4) % 4;
    if (A.size() < 2) {
        report.residuals_pass = true;
        report.line.collinear = true;
        report.verdict = ErdosVerdict::consistent_line;
        return report;
    }

    ResidualReport res = residual_one_pair(A, body);
    report.max_residual = res.max_residual;

    // Trend over distance-sorted pairs: the far third must not carry larger
    // residuals than the near third allows.
    std::vector<std::size_t> order(res.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (res.pairs[x].distance != res.pairs[y].distance)
            return res.pairs[x].distance < res.pairs[y].distance;
        return x < y;
    });
    const std::size_t third = std::max<std::size_t>(1, order.size() / 3);
    for (std::size_t i = 0; i < third; ++i)
        report.residual_head_max = std::max(report.residual_head_max,
                                            std::fabs(res.pairs[order[i]].residual));
    for (std::size_t i = order.size() - third; i < order.size(); ++i)
        report.residual_tail_max = std::max(report.residual_tail_max,
                                            std::fabs(res.pairs[order[i]].residual));

    report.residuals_pass =
        report.residual_tail_max <=
        std::max(tols.residual_abs, tols.residual_ratio * report.residual_head_max);

    report.line = collinearity(A, tols.collinear);
    report.tension_flag = report.residuals_pass && report.d_mod_4 != 1 &&
                          A.size() >= tols.report_threshold;

    if (!report.residuals_pass) report.verdict = ErdosVerdict::residuals_fail;
    else if (report.line.collinear) report.verdict = ErdosVerdict::consistent_line;
    else report.verdict = ErdosVerdict::finiteness_forced;
    return report;
}

const char* erdos_verdict_name(ErdosVerdict v) {
    switch (v) {
        case ErdosVerdict::consistent_line: return "consistent-line";
        case ErdosVerdict::finiteness_forced: return "finiteness-forced";
        default: return "residuals-fail";
    }
}

}  // namespace framelab
