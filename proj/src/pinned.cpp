#include "framelab/pinned.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "framelab/decay_profile.hpp"
#include "framelab/errors.hpp"
#include "framelab/rng.hpp"

namespace framelab {

namespace {

constexpr std::size_t kMaxCells = 50000000;

std::vector<std::int64_t> sorted_unique_cells(std::vector<std::int64_t> cells, int dim) {
    const std::size_t n = cells.size() / dim;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(cells.begin() + a * dim, cells.begin() + (a + 1) * dim,
                                            cells.begin() + b * dim, cells.begin() + (b + 1) * dim);
    });
    std::vector<std::int64_t> out;
    out.reserve(cells.size());
    for (std::size_t oi = 0; oi < n; ++oi) {
        const auto* c = &cells[order[oi] * dim];
        if (!out.empty() && std::equal(c, c + dim, out.end() - dim)) continue;
        out.insert(out.end(), c, c + dim);
    }
    return out;
}

}  // namespace

GridSet::GridSet(double resolution, int dim, std::vector<std::int64_t> cells)
    : h_(resolution), dim_(dim) {
    if (!(h_ > 0.0)) throw std::domain_error("GridSet: resolution must be > 0");
    if (dim_ < 2) throw std::domain_error("GridSet: dim must be >= 2");
    if (cells.size() % dim_ != 0) throw std::invalid_argument("GridSet: cell count not a multiple of dim");
    if (cells.size() / dim_ > kMaxCells) throw resource_error("GridSet: cell budget exceeded");
    cells_ = sorted_unique_cells(std::move(cells), dim_);

    lo_.assign(dim_, 0.0);
    hi_.assign(dim_, 0.0);
    if (!cells_.empty()) {
        std::vector<std::int64_t> clo(cells_.begin(), cells_.begin() + dim_);
        std::vector<std::int64_t> chi = clo;
        const std::size_t n = cell_count();
        for (std::size_t i = 1; i < n; ++i)
            for (int t = 0; t < dim_; ++t) {
                clo[t] = std::min(clo[t], cells_[i * dim_ + t]);
                chi[t] = std::max(chi[t], cells_[i * dim_ + t]);
            }
        for (int t = 0; t < dim_; ++t) {
            lo_[t] = static_cast<double>(clo[t]) * h_;
            hi_[t] = static_cast<double>(chi[t] + 1) * h_;
        }
    }
}

std::vector<double> GridSet::cell_center(std::size_t i) const {
    std::vector<double> c(dim_);
    for (int t = 0; t < dim_; ++t) c[t] = (static_cast<double>(cells_[i * dim_ + t]) + 0.5) * h_;
    return c;
}

double GridSet::density() const {
    if (cells_.empty()) return 0.0;
    double vol = 1.0;
    for (int t = 0; t < dim_; ++t) vol *= hi_[t] - lo_[t];
    return static_cast<double>(cell_count()) * std::pow(h_, dim_) / vol;
}

GridSet checkerboard_grid(double extent, double h) {
    if (!(extent > 0.0) || !(h > 0.0)) throw std::domain_error("checkerboard_grid: bad parameters");
    const double per = 1.0 / h;
    if (std::fabs(per - std::round(per)) > 1e-9)
        throw std::domain_error("checkerboard_grid: h must divide the unit square evenly");
    const std::int64_t n = static_cast<std::int64_t>(std::llround(extent / h));
    std::vector<std::int64_t> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (std::int64_t iy = 0; iy < n; ++iy)
        for (std::int64_t ix = 0; ix < n; ++ix) {
            const double cx = (ix + 0.5) * h;
            const double cy = (iy + 0.5) * h;
            const std::int64_t sq = static_cast<std::int64_t>(std::floor(cx)) +
                                    static_cast<std::int64_t>(std::floor(cy));
            if ((sq & 1) == 0) {
                cells.push_back(ix);
                cells.push_back(iy);
            }
        }
    return GridSet(h, 2, std::move(cells));
}

GridSet full_box_grid(int dim, double lo, double hi, double h) {
    if (!(hi > lo) || !(h > 0.0)) throw std::domain_error("full_box_grid: bad parameters");
    const std::int64_t a = static_cast<std::int64_t>(std::llround(lo / h));
    const std::int64_t b = static_cast<std::int64_t>(std::llround(hi / h));
    const std::int64_t per = b - a;
    double total = 1.0;
    for (int t = 0; t < dim; ++t) total *= static_cast<double>(per);
    if (total > static_cast<double>(kMaxCells)) throw resource_error("full_box_grid: cell budget exceeded");

    std::vector<std::int64_t> cells;
    cells.reserve(static_cast<std::size_t>(total) * dim);
    std::vector<std::int64_t> idx(dim, a);
    while (true) {
        cells.insert(cells.end(), idx.begin(), idx.end());
        int t = dim - 1;
        while (t >= 0 && idx[t] == b - 1) idx[t--] = a;
        if (t < 0) break;
        ++idx[t];
    }
    return GridSet(h, dim, std::move(cells));
}

GridSet rasterize_neighborhood(const PointSet& A, double delta, double h) {
    if (!(delta > 0.0) || !(h > 0.0)) throw std::domain_error("rasterize_neighborhood: bad parameters");
    const int d = A.dim();
    const std::int64_t reach = static_cast<std::int64_t>(std::floor(delta / h)) + 1;
    double per_point = 1.0;
    for (int t = 0; t < d; ++t) per_point *= static_cast<double>(2 * reach + 1);
    if (per_point * static_cast<double>(A.size()) > 2.0 * kMaxCells)
        throw resource_error("rasterize_neighborhood: cell budget exceeded");

    std::vector<std::int64_t> cells;
    std::vector<std::int64_t> base(d), idx(d);
    for (std::size_t i = 0; i < A.size(); ++i) {
        const auto p = A.point(i);
        for (int t = 0; t < d; ++t) base[t] = static_cast<std::int64_t>(std::floor(p[t] / h));
        std::vector<std::int64_t> off(d, -reach);
        while (true) {
            double dist2 = 0.0;
            for (int t = 0; t < d; ++t) {
                idx[t] = base[t] + off[t];
                const double c = (static_cast<double>(idx[t]) + 0.5) * h;
                dist2 += (c - p[t]) * (c - p[t]);
            }
            if (dist2 <= delta * delta) cells.insert(cells.end(), idx.begin(), idx.end());
            int t = d - 1;
            while (t >= 0 && off[t] == reach) off[t--] = -reach;
            if (t < 0) break;
            ++off[t];
        }
    }
    return GridSet(h, d, std::move(cells));
}

GridSet load_grid_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::string line;
    int lineno = 0;

    double h = 0.0, ox = 0.0, oy = 0.0;
    {
        if (!std::getline(in, line)) throw parse_error("empty mask file");
        ++lineno;
        std::istringstream ss(line);
        std::string tag_h, tag_origin;
        if (!(ss >> tag_h >> h >> tag_origin >> ox >> oy) || tag_h != "h" || tag_origin != "origin")
            throw parse_error("expected header 'h <resolution> origin <x> <y>'", lineno);
        if (!(h > 0.0)) throw parse_error("resolution must be > 0", lineno);
    }
    std::size_t cols = 0, rows = 0;
    {
        if (!std::getline(in, line)) throw parse_error("missing '<cols> <rows>' line", lineno);
        ++lineno;
        std::istringstream ss(line);
        if (!(ss >> cols >> rows) || cols == 0 || rows == 0)
            throw parse_error("expected '<cols> <rows>'", lineno);
    }

    const std::int64_t cx = static_cast<std::int64_t>(std::llround(ox / h));
    const std::int64_t cy = static_cast<std::int64_t>(std::llround(oy / h));
    std::vector<std::int64_t> cells;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) throw parse_error("mask ended before all rows were read", lineno);
        ++lineno;
        std::size_t col = 0;
        for (char ch : line) {
            if (ch == ' ' || ch == '\t' || ch == '\r') continue;
            if (ch != '0' && ch != '1') throw parse_error("mask rows must contain only 0/1", lineno);
            if (col >= cols) throw parse_error("row longer than declared width", lineno);
            if (ch == '1') {
                // First row is the top of the bitmap.
                cells.push_back(cx + static_cast<std::int64_t>(col));
                cells.push_back(cy + static_cast<std::int64_t>(rows - 1 - r));
            }
            ++col;
        }
        if (col != cols) throw parse_error("row shorter than declared width", lineno);
    }
    return GridSet(h, 2, std::move(cells));
}

void save_grid_mask(const GridSet& E, const std::string& path) {
    if (E.dim() != 2) throw std::domain_error("save_grid_mask: masks are 2-D");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_grid_mask: cannot open '" + path + "'");

    std::int64_t x0 = 0, y0 = 0, x1 = -1, y1 = -1;
    const std::size_t n = E.cell_count();
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = E.cell(i);
        if (i == 0) {
            x0 = x1 = c[0];
            y0 = y1 = c[1];
        } else {
            x0 = std::min(x0, c[0]);
            x1 = std::max(x1, c[0]);
            y0 = std::min(y0, c[1]);
            y1 = std::max(y1, c[1]);
        }
    }
    const std::size_t cols = n == 0 ? 1 : static_cast<std::size_t>(x1 - x0 + 1);
    const std::size_t rows = n == 0 ? 1 : static_cast<std::size_t>(y1 - y0 + 1);
    std::vector<std::string> grid(rows, std::string(cols, '0'));
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = E.cell(i);
        grid[rows - 1 - static_cast<std::size_t>(c[1] - y0)][static_cast<std::size_t>(c[0] - x0)] = '1';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", E.resolution());
    out << "h " << buf << " origin ";
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x0) * E.resolution());
    out << buf << " ";
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(y0) * E.resolution());
    out << buf << "\n" << cols << " " << rows << "\n";
    for (const std::string& row : grid) out << row << "\n";
}

namespace {

std::vector<double> pin_distances(const GridSet& E, std::span<const double> pin,
                                  const ConvexBody& body) {
    std::vector<double> dist(E.cell_count());
    std::vector<double> diff(E.dim());
    for (std::size_t i = 0; i < E.cell_count(); ++i) {
        const auto c = E.cell(i);
        for (int t = 0; t < E.dim(); ++t)
            diff[t] = (static_cast<double>(c[t]) + 0.5) * E.resolution() - pin[t];
        dist[i] = support(body, diff);
    }
    return dist;
}

CoverageReport coverage_from_distances(std::vector<double> dist, const GridSet& E,
                                       std::span<const double> pin,
                                       const std::vector<double>& L_values) {
    CoverageReport rep;
    rep.pin.assign(pin.begin(), pin.end());
    rep.L_values = L_values;
    rep.covered.resize(L_values.size(), false);
    rep.witness_count.resize(L_values.size(), 0);

    std::sort(dist.begin(), dist.end());
    const double h = E.resolution();
    for (std::size_t i = 0; i < L_values.size(); ++i) {
        const double L = L_values[i];
        const auto lo = std::lower_bound(dist.begin(), dist.end(), L - h);
        const auto hi = std::upper_bound(dist.begin(), dist.end(), L + h);
        rep.witness_count[i] = hi - lo;
        rep.covered[i] = rep.witness_count[i] > 0;
    }
    // Smallest tested L beyond which every tested L is covered.
    std::size_t first_all = L_values.size();
    for (std::size_t i = L_values.size(); i-- > 0;) {
        if (!rep.covered[i]) break;
        first_all = i;
    }
    if (first_all < L_values.size()) rep.L0 = L_values[first_all];

    if (!E.box_lo().empty() && E.cell_count() > 0) {
        for (int t = 0; t < E.dim(); ++t)
            if (pin[t] < E.box_lo()[t] || pin[t] > E.box_hi()[t]) rep.pin_outside_extent = true;
    } else {
        rep.pin_outside_extent = true;
    }
    return rep;
}

void validate_L(const std::vector<double>& L_values) {
    if (L_values.empty()) throw std::domain_error("coverage: L_values must be nonempty");
    for (std::size_t i = 0; i < L_values.size(); ++i) {
        if (!(L_values[i] > 0.0)) throw std::domain_error("coverage: L values must be positive");
        if (i > 0 && !(L_values[i] > L_values[i - 1]))
            throw std::domain_error("coverage: L values must be increasing");
    }
}

}  // namespace

CoverageReport pinned_distance_coverage(const GridSet& E, std::span<const double> pin,
                                        const ConvexBody& body,
                                        const std::vector<double>& L_values) {
    if (static_cast<int>(pin.size()) != E.dim() || body.dim != E.dim())
        throw std::domain_error("pinned_distance_coverage: dimension mismatch");
    validate_L(L_values);
    return coverage_from_distances(pin_distances(E, pin, body), E, pin, L_values);
}

CoverageReport refinement_coverage(const GridSet& E, std::span<const double> pin,
                                   const ConvexBody& body, double r, int trials,
                                   std::uint64_t seed, const std::vector<double>& L_values) {
    if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("refinement_coverage: r must be in (0, 1]");
    if (trials < 1) throw std::domain_error("refinement_coverage: trials must be >= 1");
    if (r == 1.0) return pinned_distance_coverage(E, pin, body, L_values);
    if (static_cast<int>(pin.size()) != E.dim() || body.dim != E.dim())
        throw std::domain_error("refinement_coverage: dimension mismatch");
    validate_L(L_values);

    const std::vector<double> dist = pin_distances(E, pin, body);
    const std::size_t n = dist.size();
    const std::size_t keep = static_cast<std::size_t>(std::llround(r * static_cast<double>(n)));

    CoverageReport worst;
    std::vector<std::size_t> order(n);
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(trial)));
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        // Partial Fisher-Yates: the first `keep` entries form the refinement.
        for (std::size_t i = 0; i < keep && n > 1; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next() % (n - i));
            std::swap(order[i], order[j]);
        }
        std::vector<double> sub(keep);
        for (std::size_t i = 0; i < keep; ++i) sub[i] = dist[order[i]];
        CoverageReport rep = coverage_from_distances(std::move(sub), E, pin, L_values);
        if (trial == 0) {
            worst = std::move(rep);
        } else {
            for (std::size_t i = 0; i < L_values.size(); ++i) {
                worst.covered[i] = worst.covered[i] && rep.covered[i];
                worst.witness_count[i] = std::min(worst.witness_count[i], rep.witness_count[i]);
            }
            worst.pin_outside_extent = worst.pin_outside_extent || rep.pin_outside_extent;
        }
    }
    // Recompute L0 from the conjunction.
    std::size_t first_all = worst.L_values.size();
    for (std::size_t i = worst.L_values.size(); i-- > 0;) {
        if (!worst.covered[i]) break;
        first_all = i;
    }
    worst.L0.reset();
    if (first_all < worst.L_values.size()) worst.L0 = worst.L_values[first_all];
    return worst;
}

CoverageReport good_set_coverage_experiment(const PointSet& A, const ConvexBody& body, double p,
                                            double delta, int j0, std::size_t pin_index,
                                            const std::vector<double>& L_values) {
    if (pin_index >= A.size()) throw std::domain_error("good_set_coverage_experiment: bad pin index");
    validate_L(L_values);
    const auto pin_pt = A.point(pin_index);
    std::vector<double> pin(pin_pt.begin(), pin_pt.end());

    PointSet good = good_subset(A, pin, body, p, delta, j0);
    if (good.empty()) {
        // Nothing to rasterize: report everything uncovered.
        CoverageReport rep;
        rep.pin = pin;
        rep.L_values = L_values;
        rep.covered.assign(L_values.size(), false);
        rep.witness_count.assign(L_values.size(), 0);
        rep.pin_outside_extent = true;
        return rep;
    }
    GridSet E = rasterize_neighborhood(good, delta, 0.5 * delta);
    return pinned_distance_coverage(E, pin, body, L_values);
}

}  // namespace framelab
