#include "framelab/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "framelab/bessel.hpp"
#include "framelab/errors.hpp"
#include "framelab/rng.hpp"

namespace framelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dist2(const double* a, const double* b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

// Closest pair by spatial hashing: an upper bound u from lexicographically
// adjacent points guarantees that any closer pair shares a cell or sits in
// neighboring cells of size u.
double closest_pair_distance(const std::vector<double>& coords, int d,
                             const std::vector<std::size_t>& order) {
    const std::size_t n = coords.size() / d;
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i)
        best2 = std::min(best2, dist2(&coords[order[i] * d], &coords[order[i + 1] * d], d));
    if (!(best2 > 0.0)) return 0.0;

    const double cell = std::sqrt(best2);
    std::map<std::vector<long long>, std::vector<std::size_t>> grid;
    std::vector<long long> key(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (int t = 0; t < d; ++t) key[t] = static_cast<long long>(std::floor(coords[i * d + t] / cell));
        grid[key].push_back(i);
    }

    std::vector<long long> nb(d);
    for (const auto& [cell_key, members] : grid) {
        // Enumerate the 3^d neighborhood (including the cell itself).
        std::vector<int> off(d, -1);
        while (true) {
            for (int t = 0; t < d; ++t) nb[t] = cell_key[t] + off[t];
            auto it = grid.find(nb);
            if (it != grid.end()) {
                const bool same = it->first == cell_key;
                for (std::size_t i : members)
                    for (std::size_t j : it->second) {
                        if (same && j <= i) continue;
                        best2 = std::min(best2, dist2(&coords[i * d], &coords[j * d], d));
                    }
            }
            int t = 0;
            while (t < d && off[t] == 1) off[t++] = -1;
            if (t == d) break;
            ++off[t];
        }
    }
    return std::sqrt(best2);
}

}  // namespace

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 2) throw std::domain_error("PointSet: dim must be >= 2");
    if (coords_.size() % dim_ != 0) throw std::invalid_argument("PointSet: coordinate count not a multiple of dim");
    const std::size_t n = coords_.size() / dim_;
    if (n > kMaxPoints) throw resource_error("PointSet: budget of 10^7 points exceeded");
    for (double v : coords_)
        if (!std::isfinite(v)) throw std::invalid_argument("PointSet: coordinates must be finite");

    for (std::size_t i = 0; i < n; ++i)
        for (int t = 0; t < dim_; ++t) extent_ = std::max(extent_, std::fabs(coords_[i * dim_ + t]));

    if (n >= 2) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(
                coords_.begin() + a * dim_, coords_.begin() + (a + 1) * dim_,
                coords_.begin() + b * dim_, coords_.begin() + (b + 1) * dim_);
        });
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::equal(coords_.begin() + order[i] * dim_, coords_.begin() + (order[i] + 1) * dim_,
                           coords_.begin() + order[i + 1] * dim_))
                throw std::invalid_argument("PointSet: duplicate point");
        }
        separation_ = closest_pair_distance(coords_, dim_, order);
    }
}

PointSet lattice(int d, double spacing, double extent) {
    if (d < 2) throw std::domain_error("lattice: d must be >= 2");
    if (!(spacing > 0.0)) throw std::domain_error("lattice: spacing must be > 0");
    if (!(extent > 0.0)) throw std::domain_error("lattice: extent must be > 0");
    const long long kmax = static_cast<long long>(std::floor(extent / spacing));
    const long long per_axis = 2 * kmax + 1;
    double total = 1.0;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(per_axis);
    if (total > static_cast<double>(kMaxPoints)) throw resource_error("lattice: budget of 10^7 points exceeded");

    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(total) * d);
    std::vector<long long> k(d, -kmax);
    while (true) {
        for (int t = 0; t < d; ++t) coords.push_back(spacing * static_cast<double>(k[t]));
        int t = d - 1;
        while (t >= 0 && k[t] == kmax) k[t--] = -kmax;
        if (t < 0) break;
        ++k[t];
    }
    return PointSet(d, std::move(coords));
}

PointSet progression_line_set(int d, double step, double offset, int count,
                              std::span<const double> direction) {
    if (d < 2) throw std::domain_error("progression_line_set: d must be >= 2");
    if (!(step > 0.0)) throw std::domain_error("progression_line_set: step must be > 0");
    if (count < 1) throw std::domain_error("progression_line_set: count must be >= 1");
    if (static_cast<std::size_t>(count) > kMaxPoints) throw resource_error("progression_line_set: budget exceeded");

    std::vector<double> dir(d, 0.0);
    if (direction.empty()) {
        dir[0] = 1.0;
    } else {
        if (static_cast<int>(direction.size()) != d)
            throw std::domain_error("progression_line_set: direction dimension mismatch");
        double n = 0.0;
        for (double v : direction) n += v * v;
        n = std::sqrt(n);
        if (n == 0.0) throw std::domain_error("progression_line_set: zero direction");
        for (int i = 0; i < d; ++i) dir[i] = direction[i] / n;
    }

    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * d);
    for (int k = 0; k < count; ++k) {
        const double t = offset + k * step;
        for (int i = 0; i < d; ++i) coords.push_back(t * dir[i]);
    }
    return PointSet(d, std::move(coords));
}

PointSet bessel_zero_line_set(int d, int count) {
    if (d != 2 && d != 3 && d != 5) throw std::domain_error("bessel_zero_line_set: d must be in {2, 3, 5}");
    if (count < 1 || count > 200) throw std::domain_error("bessel_zero_line_set: count must be in [1, 200]");
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * d);
    for (int k = 1; k <= count; ++k) {
        const double t = bessel_j_zero(BesselOrder{d}, k) / (2.0 * kPi);
        coords.push_back(t);
        for (int i = 1; i < d; ++i) coords.push_back(0.0);
    }
    return PointSet(d, std::move(coords));
}

PointSet perturb(const PointSet& A, const std::function<double(double)>& magnitude,
                 std::uint64_t seed) {
    const int d = A.dim();
    std::vector<double> coords(A.coords());
    for (std::size_t i = 0; i < A.size(); ++i) {
        double pn = 0.0;
        for (int t = 0; t < d; ++t) pn += coords[i * d + t] * coords[i * d + t];
        pn = std::sqrt(pn);
        const double mag = magnitude(pn);
        if (mag < 0.0) throw std::domain_error("perturb: magnitude must be nonnegative");
        if (mag == 0.0) continue;

        SplitMix64 rng(substream_seed(seed, i));
        std::vector<double> g(d);
        double gn = 0.0;
        do {
            gn = 0.0;
            for (int t = 0; t < d; ++t) {
                g[t] = rng.gaussian();
                gn += g[t] * g[t];
            }
            gn = std::sqrt(gn);
        } while (gn < 1e-12);
        const double radius = mag * std::pow(rng.uniform01(), 1.0 / d);
        for (int t = 0; t < d; ++t) coords[i * d + t] += radius * g[t] / gn;
    }
    return PointSet(d, std::move(coords));
}

DensityEstimate density_estimate(const PointSet& A, const std::vector<double>& radii) {
    if (radii.empty()) throw std::domain_error("density_estimate: radii must be nonempty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::domain_error("density_estimate: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::domain_error("density_estimate: radii must be increasing");
    }
    if (!A.empty() && radii.back() > A.extent() * (1.0 + 1e-12) + 1e-12)
        throw std::domain_error("density_estimate: max radius exceeds the set extent");

    const int d = A.dim();
    DensityEstimate est;
    est.radii = radii;
    est.counts.resize(radii.size(), 0);
    est.densities.resize(radii.size(), 0.0);

    // One pass: bucket each point by the smallest window containing it.
    std::vector<long long> first(radii.size() + 1, 0);
    for (std::size_t i = 0; i < A.size(); ++i) {
        double m = 0.0;
        const auto p = A.point(i);
        for (int t = 0; t < d; ++t) m = std::max(m, std::fabs(p[t]));
        const std::size_t idx =
            std::lower_bound(radii.begin(), radii.end(), m) - radii.begin();
        ++first[idx];
    }
    long long run = 0;
    for (std::size_t r = 0; r < radii.size(); ++r) {
        run += first[r];
        est.counts[r] = run;
        est.densities[r] = static_cast<double>(run) / std::pow(2.0 * radii[r], d);
    }

    const std::size_t third = std::max<std::size_t>(1, radii.size() / 3);
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < third; ++i) head += est.densities[i];
    for (std::size_t i = radii.size() - third; i < radii.size(); ++i) tail += est.densities[i];
    head /= third;
    tail /= third;
    if (tail > head * 1.05) est.trend = Trend::increasing;
    else if (tail < head * 0.95) est.trend = Trend::decreasing;
    else est.trend = Trend::flat;
    return est;
}

const char* trend_name(Trend t) {
    switch (t) {
        case Trend::increasing: return "increasing";
        case Trend::decreasing: return "decreasing";
        default: return "flat";
    }
}

PointSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    int dim = -1;
    std::vector<double> coords;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        if (dim < 0) {
            std::string tag;
            if (!(ss >> tag)) continue;  // blank / comment before header
            int d = 0;
            if (tag != "dim" || !(ss >> d)) throw parse_error("expected header 'dim <d>'", lineno);
            std::string extra;
            if (ss >> extra) throw parse_error("trailing tokens after header", lineno);
            if (d < 2) throw parse_error("dim must be >= 2", lineno);
            dim = d;
            continue;
        }
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (!ss.eof()) throw parse_error("malformed number", lineno);
        if (row.empty()) continue;
        if (static_cast<int>(row.size()) != dim)
            throw parse_error("expected " + std::to_string(dim) + " coordinates, got " +
                                  std::to_string(row.size()),
                              lineno);
        coords.insert(coords.end(), row.begin(), row.end());
    }
    if (dim < 0) throw parse_error("missing header 'dim <d>'");
    return PointSet(dim, std::move(coords));
}

void save_points(const PointSet& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_points: cannot open '" + path + "'");
    out << "dim " << A.dim() << "\n";
    char buf[40];
    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto p = A.point(i);
        for (int t = 0; t < A.dim(); ++t) {
            std::snprintf(buf, sizeof buf, "%.17g", p[t]);
            out << (t ? " " : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("save_points: write failed for '" + path + "'");
}

}  // namespace framelab
