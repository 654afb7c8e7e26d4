#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/convex_body.hpp"
#include "framelab/pointset.hpp"

namespace framelab {

// Grid discretization of a measurable set E: cell c is occupied iff the
// cell's center (c + 1/2) h lies in E. Occupancy is stored sparsely (sorted
// integer cells), so generated sets may live in any dimension; the dense
// bitmap mask format is 2-D.
class GridSet {
public:
    GridSet(double resolution, int dim, std::vector<std::int64_t> cells);

    double resolution() const { return h_; }
    int dim() const { return dim_; }
    std::size_t cell_count() const { return cells_.size() / dim_; }

    std::span<const std::int64_t> cell(std::size_t i) const {
        return {cells_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    std::vector<double> cell_center(std::size_t i) const;

    // Bounding box of the occupied cells, in world coordinates.
    std::vector<double> box_lo() const { return lo_; }
    std::vector<double> box_hi() const { return hi_; }

    double density() const;  // |occupied| h^d / box volume

private:
    double h_;
    int dim_;
    std::vector<std::int64_t> cells_;  // row-major, sorted lexicographically, unique
    std::vector<double> lo_, hi_;
};

// Checkerboard of unit squares over [0, extent]^2: the square with corner
// (i, j) is filled iff i + j is even. Cell size h must divide 1 evenly.
GridSet checkerboard_grid(double extent, double h);

// Full box [lo, hi]^d at resolution h.
GridSet full_box_grid(int dim, double lo, double hi, double h);

// Cells whose center lies within Euclidean distance delta of some point.
GridSet rasterize_neighborhood(const PointSet& A, double delta, double h);

// Dense 2-D mask: header "h <resolution> origin <x> <y>", then "<cols>
// <rows>", then rows of 0/1 characters, first row = top (largest y).
GridSet load_grid_mask(const std::string& path);
void save_grid_mask(const GridSet& E, const std::string& path);

struct CoverageReport {
    std::vector<double> pin;
    std::vector<double> L_values;
    std::vector<bool> covered;            // |rho*(x - pin) - L| <= h for some occupied x
    std::vector<long long> witness_count;
    std::optional<double> L0;             // smallest tested L beyond which all are covered
    bool pin_outside_extent = false;
};

// Thickened-shell coverage of the pinned rho*-distance set; the shell
// half-width equals the grid resolution (a discretized set cannot witness
// exact-radius incidence, and reports state the thickening explicitly).
CoverageReport pinned_distance_coverage(const GridSet& E, std::span<const double> pin,
                                        const ConvexBody& body,
                                        const std::vector<double>& L_values);

// Worst case over `trials` seeded pseudo-random refinements that keep an
// r-fraction of the occupied cells. Refinements are uniform cell-keeps, not
// adversarial; r = 1 returns pinned_distance_coverage bit-identically.
CoverageReport refinement_coverage(const GridSet& E, std::span<const double> pin,
                                   const ConvexBody& body, double r, int trials,
                                   std::uint64_t seed, const std::vector<double>& L_values);

// Rasterizes the delta-neighborhood of the good subset of A seen from
// A[pin_index] (resolution h = delta/2) and runs the coverage scan from the
// pin. Clustered phases leave the radii between the clusters uncovered.
CoverageReport good_set_coverage_experiment(const PointSet& A, const ConvexBody& body, double p,
                                            double delta, int j0, std::size_t pin_index,
                                            const std::vector<double>& L_values);

}  // namespace framelab
