#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace framelab {

// Finite truncation of a discrete point configuration. Immutable after
// construction; construction validates that all points are distinct and
// caches the minimum pairwise Euclidean distance.
class PointSet {
public:
    PointSet(int dim, std::vector<double> coords);

    int dim() const { return dim_; }
    std::size_t size() const { return coords_.size() / dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& coords() const { return coords_; }

    // Minimum pairwise Euclidean distance; 0 when fewer than two points.
    double separation() const { return separation_; }

    // max |coordinate| over all points (the sup-norm extent of the set).
    double extent() const { return extent_; }

private:
    int dim_;
    std::vector<double> coords_;  // row-major, size() * dim_
    double separation_ = 0.0;
    double extent_ = 0.0;
};

// Generation budget shared by all generators.
inline constexpr std::size_t kMaxPoints = 10000000;

// All points of spacing * Z^d inside [-extent, extent]^d.
PointSet lattice(int d, double spacing, double extent);

// Arithmetic progression (offset + k step) * direction, k = 0..count-1.
// direction is normalized internally; defaults to e_1.
PointSet progression_line_set(int d, double step, double offset, int count,
                              std::span<const double> direction = {});

// Points t_k e_1 with t_k = z_k / (2 pi), z_k the k-th positive zero of
// J_{d/2}. Pairwise differences of {0} u A sit at zeros of the ball
// transform; consecutive gaps approach 1/2. d in {2, 3, 5}, count <= 200.
PointSet bessel_zero_line_set(int d, int count);

// Displaces every point by a deterministic pseudo-random vector of norm
// <= magnitude(|p|). Reproducible for a fixed seed.
PointSet perturb(const PointSet& A, const std::function<double(double)>& magnitude,
                 std::uint64_t seed);

enum class Trend { increasing, decreasing, flat };

struct DensityEstimate {
    std::vector<double> radii;
    std::vector<long long> counts;     // #{A in [-R, R]^d}, closed windows
    std::vector<double> densities;     // counts / (2R)^d
    Trend trend = Trend::flat;
};

// Counting-window density per radius; cube windows [-R, R]^d. The trend
// compares the mean density over the first third of the radii with the
// last third (5% relative band for "flat").
DensityEstimate density_estimate(const PointSet& A, const std::vector<double>& radii);

const char* trend_name(Trend t);

// Text format: first payload line "dim <d>", then one point per line as d
// whitespace-separated decimals; '#' starts a comment. Round-trips exactly.
PointSet load_points(const std::string& path);
void save_points(const PointSet& A, const std::string& path);

}  // namespace framelab
