#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "framelab/convex_body.hpp"
#include "framelab/pointset.hpp"

namespace framelab {

// p = infinity selects the sup-norm variants throughout this module.
inline constexpr double kPInf = std::numeric_limits<double>::infinity();

// Radial envelope phi >= 0 on [0, inf). monotone means non-increasing; it is
// trusted (spot-checked only by tests) and lets the sup-norm coefficient use
// the left endpoint directly.
struct Envelope {
    std::function<double(double)> phi;
    bool monotone = false;
};

// Tightest admissible dyadic decay coefficient of an envelope:
//   c_j = ((1/2^j) int_{2^j}^{2^{j+1}} phi^p)^{1/p} * 2^{j(d+1)/2},
// for p = inf the essential sup over the interval replaces the mean.
// Adaptive quadrature to 1e-9 relative; non-integrable phi^p raises
// domain_error.
double envelope_cj(const Envelope& phi, int dim, double p, int j);

// Dyadic annulus bucket: members are indices of points a with
// 2^j <= dist(a, pin) < 2^{j+1}. The pin itself is excluded.
struct AnnulusBucket {
    int j = 0;
    std::vector<std::size_t> members;
};

// Shell membership norm: Euclidean matches the annuli of the decay
// hypothesis; rho_star is the alternative convention exposed for
// comparison (the two differ only by fixed comparability constants).
enum class ShellNorm { euclidean, rho_star };

std::vector<AnnulusBucket> annulus_partition(const PointSet& A, std::span<const double> pin,
                                             int j_min, int j_max,
                                             ShellNorm norm = ShellNorm::euclidean,
                                             const ConvexBody* rho_body = nullptr);

// Empirical decay coefficient of a point set around a pin:
//   c_j = ((1/2^{dj}) sum_{a in bucket j} |ft_K(a - pin)|^p)^{1/p} * 2^{j(d+1)/2};
// for p = inf, the sup of |ft_K| * 2^{j(d+1)/2} over the bucket (no mean
// normalization). Empty bucket gives 0.
double empirical_cj(const PointSet& A, std::span<const double> pin, const ConvexBody& body,
                    double p, int j, ShellNorm norm = ShellNorm::euclidean);

// |ft_K(a - pin)| over one bucket, for oracles and diagnostics.
std::vector<double> bucket_magnitudes(const PointSet& A, std::span<const double> pin,
                                      const ConvexBody& body, const AnnulusBucket& bucket);

struct SinClusterStat {
    double fraction = 0.0;    // fraction of the bucket with |sin phase|^p > delta
    std::size_t bucket_count = 0;
};

// Fraction of bucket-j points whose phase residual
// |sin(2 pi (rho*(a - pin) - (d-1)/8))|^p exceeds delta.
SinClusterStat sin_cluster_fraction(const PointSet& A, std::span<const double> pin,
                                    const ConvexBody& body, double p, double delta, int j,
                                    ShellNorm norm = ShellNorm::euclidean);

// Union over j >= j0 of the bucket points with phase residual <= delta.
PointSet good_subset(const PointSet& A, std::span<const double> pin, const ConvexBody& body,
                     double p, double delta, int j0, ShellNorm norm = ShellNorm::euclidean);
std::vector<std::size_t> good_subset_indices(const PointSet& A, std::span<const double> pin,
                                             const ConvexBody& body, double p, double delta,
                                             int j0, ShellNorm norm = ShellNorm::euclidean);

// Closed evaluation of int_{A <= rho*(u) <= B} F(rho*(u)) du as
//   d * dual_volume * int_A^B F(t) t^{d-1} dt
// (co-area reduction over rho*-shells).
double coarea_shell_integral(const ConvexBody& body, const std::function<double(double)>& F,
                             double A, double B);

struct DecayProfile {
    enum class Kind { envelope, empirical };

    double p = 2.0;
    std::vector<int> j_values;
    std::vector<double> c_values;
    Kind kind = Kind::empirical;
    std::vector<double> pin;      // empirical profiles record their pin
    long pin_index = -1;          // index into the source set, when known
};

enum class ProfileVerdict { obstruction_indicated, hypothesis_fails };

struct ProfileSummary {
    struct PerPin {
        long pin_index = -1;
        double tail_proxy = 0.0;  // max c_j over the last third of scales
    };
    std::vector<PerPin> per_pin;
    double head_max = 0.0;        // max c_j over the first third, all pins
    double tail_max = 0.0;        // max tail proxy over pins
    double ratio_threshold = 0.5; // tail/head ratio separating the verdicts
    double zero_floor = 1e-9;
    ProfileVerdict verdict = ProfileVerdict::hypothesis_fails;
};

// limsup proxy and verdict: obstruction-indicated iff the worst tail proxy
// stays below max(ratio_threshold * head_max, zero_floor). Requires at
// least 3 dyadic scales per profile. The thresholds are desk-scale
// engineering choices and are echoed in the summary.
ProfileSummary profile_summary(const std::vector<DecayProfile>& profiles);

const char* profile_verdict_name(ProfileVerdict v);

}  // namespace framelab
