#include "framelab/decay_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "framelab/errors.hpp"
#include "framelab/fourier_body.hpp"
#include "framelab/quadrature.hpp"

namespace framelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_pin(const PointSet& A, std::span<const double> pin) {
    if (static_cast<int>(pin.size()) != A.dim())
        throw std::domain_error("decay_profile: pin dimension mismatch");
}

double shell_distance(const PointSet& A, std::size_t i, std::span<const double> pin,
                      ShellNorm norm, const ConvexBody* body, std::vector<double>& diff) {
    const auto p = A.point(i);
    for (std::size_t t = 0; t < pin.size(); ++t) diff[t] = p[t] - pin[t];
    if (norm == ShellNorm::euclidean) {
        double s = 0.0;
        for (double v : diff) s += v * v;
        return std::sqrt(s);
    }
    return support(*body, diff);
}

double phase_residual(const ConvexBody& body, std::span<const double> diff) {
    const double rho = support(body, diff);
    return std::sin(2.0 * kPi * (rho - (body.dim - 1) / 8.0));
}

void check_p(double p) {
    if (!(p >= 1.0)) throw std::domain_error("decay_profile: p must be in [1, inf]");
}

}  // namespace

double envelope_cj(const Envelope& phi, int dim, double p, int j) {
    check_p(p);
    if (dim < 2) throw std::domain_error("envelope_cj: dim must be >= 2");
    if (!phi.phi) throw std::domain_error("envelope_cj: empty envelope");
    const double lo = std::ldexp(1.0, j);
    const double hi = std::ldexp(1.0, j + 1);
    const double scale = std::pow(2.0, 0.5 * j * (dim + 1));

    if (std::isinf(p)) {
        double sup = std::max(phi.phi(lo), phi.phi(hi));
        if (!phi.monotone) {
            const int n = 4096;
            for (int i = 1; i < n; ++i) {
                const double t = lo + (hi - lo) * i / n;
                sup = std::max(sup, phi.phi(t));
            }
        }
        if (!std::isfinite(sup) || sup < 0.0)
            throw std::domain_error("envelope_cj: envelope not finite/nonnegative on the interval");
        return sup * scale;
    }

    auto integrand = [&](double t) {
        const double v = phi.phi(t);
        if (v < 0.0) throw std::domain_error("envelope_cj: envelope must be nonnegative");
        return std::pow(v, p);
    };
    IntegralResult res = integrate_adaptive_rel(integrand, lo, hi, 1e-11);
    if (!std::isfinite(res.value) || !res.converged)
        throw std::domain_error("envelope_cj: phi^p is not integrable on the interval");
    return std::pow(res.value / lo, 1.0 / p) * scale;
}

std::vector<AnnulusBucket> annulus_partition(const PointSet& A, std::span<const double> pin,
                                             int j_min, int j_max, ShellNorm norm,
                                             const ConvexBody* rho_body) {
    check_pin(A, pin);
    if (j_min > j_max) throw std::domain_error("annulus_partition: j_min must be <= j_max");
    if (norm == ShellNorm::rho_star && rho_body == nullptr)
        throw std::domain_error("annulus_partition: rho_star shells need a body");

    std::vector<AnnulusBucket> buckets(j_max - j_min + 1);
    for (int j = j_min; j <= j_max; ++j) buckets[j - j_min].j = j;

    std::vector<double> diff(A.dim());
    const double lo = std::ldexp(1.0, j_min);
    const double hi = std::ldexp(1.0, j_max + 1);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double r = shell_distance(A, i, pin, norm, rho_body, diff);
        if (r <= 0.0 || r < lo || r >= hi) continue;
        const int j = static_cast<int>(std::floor(std::log2(r)));
        // log2 rounding can land one bucket off at dyadic boundaries; nudge
        // so that r = 2^j belongs to bucket j.
        int jj = std::clamp(j, j_min, j_max);
        while (jj > j_min && r < std::ldexp(1.0, jj)) --jj;
        while (jj < j_max && r >= std::ldexp(1.0, jj + 1)) ++jj;
        buckets[jj - j_min].members.push_back(i);
    }
    return buckets;
}

namespace {

AnnulusBucket single_bucket(const PointSet& A, std::span<const double> pin, int j, ShellNorm norm,
                            const ConvexBody* body) {
    AnnulusBucket b;
    b.j = j;
    std::vector<double> diff(A.dim());
    const double lo = std::ldexp(1.0, j);
    const double hi = std::ldexp(1.0, j + 1);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double r = shell_distance(A, i, pin, norm, body, diff);
        if (r > 0.0 && r >= lo && r < hi) b.members.push_back(i);
    }
    return b;
}

}  // namespace

double empirical_cj(const PointSet& A, std::span<const double> pin, const ConvexBody& body,
                    double p, int j, ShellNorm norm) {
    check_pin(A, pin);
    check_p(p);
    const AnnulusBucket bucket = single_bucket(A, pin, j, norm, &body);
    if (bucket.members.empty()) return 0.0;

    std::vector<double> diff(A.dim());
    const double scale = std::pow(2.0, 0.5 * j * (body.dim + 1));
    if (std::isinf(p)) {
        double sup = 0.0;
        for (std::size_t i : bucket.members) {
            const auto pt = A.point(i);
            for (int t = 0; t < A.dim(); ++t) diff[t] = pt[t] - pin[t];
            sup = std::max(sup, std::fabs(ft_indicator_exact(body, diff)));
        }
        return sup * scale;
    }

    double sum = 0.0;
    for (std::size_t i : bucket.members) {
        const auto pt = A.point(i);
        for (int t = 0; t < A.dim(); ++t) diff[t] = pt[t] - pin[t];
        sum += std::pow(std::fabs(ft_indicator_exact(body, diff)), p);
    }
    const double mean = sum / std::pow(2.0, static_cast<double>(body.dim) * j);
    return std::pow(mean, 1.0 / p) * scale;
}

std::vector<double> bucket_magnitudes(const PointSet& A, std::span<const double> pin,
                                      const ConvexBody& body, const AnnulusBucket& bucket) {
    check_pin(A, pin);
    std::vector<double> out;
    out.reserve(bucket.members.size());
    std::vector<double> diff(A.dim());
    for (std::size_t i : bucket.members) {
        const auto pt = A.point(i);
        for (int t = 0; t < A.dim(); ++t) diff[t] = pt[t] - pin[t];
        out.push_back(std::fabs(ft_indicator_exact(body, diff)));
    }
    return out;
}

SinClusterStat sin_cluster_fraction(const PointSet& A, std::span<const double> pin,
                                    const ConvexBody& body, double p, double delta, int j,
                                    ShellNorm norm) {
    check_pin(A, pin);
    check_p(p);
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("sin_cluster_fraction: delta must be in (0, 1]");
    const AnnulusBucket bucket = single_bucket(A, pin, j, norm, &body);
    SinClusterStat stat;
    stat.bucket_count = bucket.members.size();
    if (bucket.members.empty()) return stat;

    std::vector<double> diff(A.dim());
    std::size_t over = 0;
    for (std::size_t i : bucket.members) {
        const auto pt = A.point(i);
        for (int t = 0; t < A.dim(); ++t) diff[t] = pt[t] - pin[t];
        const double s = std::fabs(phase_residual(body, diff));
        const double sp = std::isinf(p) ? s : std::pow(s, p);
        if (sp > delta) ++over;
    }
    stat.fraction = static_cast<double>(over) / static_cast<double>(bucket.members.size());
    return stat;
}

std::vector<std::size_t> good_subset_indices(const PointSet& A, std::span<const double> pin,
                                             const ConvexBody& body, double p, double delta,
                                             int j0, ShellNorm norm) {
    check_pin(A, pin);
    check_p(p);
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("good_subset: delta must be in (0, 1]");
    std::vector<std::size_t> out;
    std::vector<double> diff(A.dim());
    const double lo = std::ldexp(1.0, j0);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double r = shell_distance(A, i, pin, norm, &body, diff);
        if (r <= 0.0 || r < lo) continue;
        const double s = std::fabs(phase_residual(body, diff));
        const double sp = std::isinf(p) ? s : std::pow(s, p);
        if (sp <= delta) out.push_back(i);
    }
    return out;
}

PointSet good_subset(const PointSet& A, std::span<const double> pin, const ConvexBody& body,
                     double p, double delta, int j0, ShellNorm norm) {
    const auto idx = good_subset_indices(A, pin, body, p, delta, j0, norm);
    std::vector<double> coords;
    coords.reserve(idx.size() * A.dim());
    for (std::size_t i : idx) {
        const auto pt = A.point(i);
        coords.insert(coords.end(), pt.begin(), pt.end());
    }
    return PointSet(A.dim(), std::move(coords));
}

double coarea_shell_integral(const ConvexBody& body, const std::function<double(double)>& F,
                             double A, double B) {
    if (!(0.0 < A && A < B)) throw std::domain_error("coarea_shell_integral: need 0 < A < B");
    if (!F) throw std::domain_error("coarea_shell_integral: empty integrand");
    const int d = body.dim;
    auto integrand = [&](double t) { return F(t) * std::pow(t, d - 1); };
    IntegralResult res = integrate_adaptive_rel(integrand, A, B, 1e-13, 1e-300);
    if (!res.converged)
        throw quadrature_budget_error("coarea_shell_integral: node budget exhausted",
                                      d * dual_volume(body) * res.value,
                                      d * dual_volume(body) * res.error);
    return d * dual_volume(body) * res.value;
}

ProfileSummary profile_summary(const std::vector<DecayProfile>& profiles) {
    if (profiles.empty()) throw std::domain_error("profile_summary: no profiles");
    ProfileSummary summary;
    for (const DecayProfile& prof : profiles) {
        if (prof.j_values.size() < 3 || prof.j_values.size() != prof.c_values.size())
            throw std::domain_error("profile_summary: each profile needs >= 3 dyadic scales");
        const std::size_t n = prof.c_values.size();
        const std::size_t third = std::max<std::size_t>(1, n / 3);
        double head = 0.0, tail = 0.0;
        for (std::size_t i = 0; i < third; ++i) head = std::max(head, prof.c_values[i]);
        for (std::size_t i = n - third; i < n; ++i) tail = std::max(tail, prof.c_values[i]);
        summary.per_pin.push_back({prof.pin_index, tail});
        summary.head_max = std::max(summary.head_max, head);
        summary.tail_max = std::max(summary.tail_max, tail);
    }
    const double bar = std::max(summary.ratio_threshold * summary.head_max, summary.zero_floor);
    summary.verdict = summary.tail_max <= bar ? ProfileVerdict::obstruction_indicated
                                              : ProfileVerdict::hypothesis_fails;
    return summary;
}

const char* profile_verdict_name(ProfileVerdict v) {
    return v == ProfileVerdict::obstruction_indicated ? "obstruction-indicated" : "hypothesis-fails";
}

}  // namespace framelab
