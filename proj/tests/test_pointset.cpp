#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/pointset.hpp"

using framelab::PointSet;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("lattice counts and separation") {
    CHECK(framelab::lattice(2, 1.0, 2.5).size() == 25);
    CHECK(framelab::lattice(2, 2.0, 2.5).size() == 9);
    CHECK(framelab::lattice(3, 1.0, 1.5).size() == 27);
    CHECK(framelab::lattice(2, 1.0, 2.5).separation() == doctest::Approx(1.0));
    CHECK_THROWS_AS(framelab::lattice(2, 0.001, 2000.0), framelab::resource_error);
}

TEST_CASE("progression line sets") {
    PointSet line = framelab::progression_line_set(5, 0.5, 0.0, 10);
    CHECK(line.size() == 10);
    CHECK(line.dim() == 5);
    // Pairwise Euclidean distances in (1/2) Z (the direction is e1).
    for (std::size_t i = 0; i < line.size(); ++i)
        for (std::size_t j = i + 1; j < line.size(); ++j) {
            double d2 = 0.0;
            for (int t = 0; t < 5; ++t) {
                const double v = line.point(i)[t] - line.point(j)[t];
                d2 += v * v;
            }
            const double dist = std::sqrt(d2);
            CHECK(std::fabs(dist * 2.0 - std::round(dist * 2.0)) < 1e-12);
        }
    CHECK(line.separation() == doctest::Approx(0.5));

    PointSet diag = framelab::progression_line_set(2, 1.0, 0.0, 3, std::vector<double>{1.0, 1.0});
    CHECK(diag.size() == 3);
    CHECK(diag.point(2)[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("bessel zero line sets") {
    PointSet one = framelab::bessel_zero_line_set(2, 1);
    CHECK(one.size() == 1);
    CHECK(one.point(0)[0] == doctest::Approx(3.8317059702 / (2.0 * kPi)).epsilon(1e-9));
    PointSet three = framelab::bessel_zero_line_set(3, 1);
    CHECK(three.point(0)[0] == doctest::Approx(4.4934094579 / (2.0 * kPi)).epsilon(1e-9));

    // Consecutive gaps approach 1/2, monotonically beyond the first few.
    for (int d : {2, 3, 5}) {
        PointSet pts = framelab::bessel_zero_line_set(d, 60);
        double prev_gap_err = 1.0;
        for (std::size_t k = 10; k + 1 < pts.size(); ++k) {
            const double gap = pts.point(k + 1)[0] - pts.point(k)[0];
            const double err = std::fabs(gap - 0.5);
            CHECK(err <= prev_gap_err + 1e-12);
            prev_gap_err = err;
        }
        const double last_gap = pts.point(59)[0] - pts.point(58)[0];
        CHECK(std::fabs(last_gap - 0.5) < 1e-3);
    }
    CHECK_THROWS_AS(framelab::bessel_zero_line_set(4, 5), std::domain_error);
    CHECK_THROWS_AS(framelab::bessel_zero_line_set(2, 500), std::domain_error);
}

TEST_CASE("perturb is bounded, reproducible, and identity at zero") {
    PointSet base = framelab::lattice(2, 1.0, 5.0);
    PointSet same = framelab::perturb(base, [](double) { return 0.0; }, 42);
    CHECK(same.coords() == base.coords());

    PointSet p1 = framelab::perturb(base, [](double) { return 0.125; }, 42);
    PointSet p2 = framelab::perturb(base, [](double) { return 0.125; }, 42);
    PointSet p3 = framelab::perturb(base, [](double) { return 0.125; }, 43);
    CHECK(p1.coords() == p2.coords());
    CHECK(p1.coords() != p3.coords());
    for (std::size_t i = 0; i < base.size(); ++i) {
        double d2 = 0.0;
        for (int t = 0; t < 2; ++t) {
            const double v = p1.point(i)[t] - base.point(i)[t];
            d2 += v * v;
        }
        CHECK(std::sqrt(d2) <= 0.125 + 1e-15);
    }

    // Distance-dependent magnitude: displacement <= |p|^{-1} for far points.
    PointSet line = framelab::progression_line_set(5, 0.5, 1.0, 50);
    PointSet soft = framelab::perturb(line, [](double r) { return 1.0 / std::max(r, 1.0); }, 7);
    for (std::size_t i = 0; i < line.size(); ++i) {
        double d2 = 0.0, r2 = 0.0;
        for (int t = 0; t < 5; ++t) {
            const double v = soft.point(i)[t] - line.point(i)[t];
            d2 += v * v;
            r2 += line.point(i)[t] * line.point(i)[t];
        }
        CHECK(std::sqrt(d2) <= 1.0 / std::max(std::sqrt(r2), 1.0) + 1e-15);
    }
}

TEST_CASE("density estimates match direct counts") {
    PointSet z2 = framelab::lattice(2, 1.0, 100.0);
    auto est = framelab::density_estimate(z2, {50.0, 75.0, 100.0});
    CHECK(est.counts.back() == 201 * 201);
    CHECK(est.densities.back() == doctest::Approx(201.0 * 201.0 / (200.0 * 200.0)));

    PointSet line = framelab::progression_line_set(2, 1.0, -100.0, 201);
    auto lest = framelab::density_estimate(line, {25.0, 50.0, 100.0});
    CHECK(lest.counts.back() == 201);
    CHECK(lest.densities.back() == doctest::Approx(201.0 / 40000.0));
    CHECK(lest.densities.back() < 0.01);
    CHECK(lest.trend == framelab::Trend::decreasing);

    PointSet even = framelab::lattice(2, 2.0, 100.0);
    auto eest = framelab::density_estimate(even, {40.0, 70.0, 100.0});
    CHECK(eest.densities.back() == doctest::Approx(101.0 * 101.0 / (200.0 * 200.0)));
    // -> 1/4 for the spacing-2 lattice.
    CHECK(eest.densities.back() == doctest::Approx(0.25).epsilon(0.02));

    CHECK_THROWS_AS(framelab::density_estimate(z2, {}), std::domain_error);
    CHECK_THROWS_AS(framelab::density_estimate(z2, {50.0, 40.0}), std::domain_error);
}

TEST_CASE("density translation invariance within the boundary correction") {
    PointSet base = framelab::lattice(2, 1.0, 60.0);
    std::vector<double> shifted_coords = base.coords();
    const double vx = 0.75, vy = -0.25;
    for (std::size_t i = 0; i < base.size(); ++i) {
        shifted_coords[2 * i] += vx;
        shifted_coords[2 * i + 1] += vy;
    }
    PointSet shifted(2, std::move(shifted_coords));
    const double vnorm = std::hypot(vx, vy);
    for (double R : {20.0, 30.0, 40.0}) {
        const auto a = framelab::density_estimate(base, {R});
        const auto lo = framelab::density_estimate(base, {R - vnorm});
        const auto hi = framelab::density_estimate(base, {R + vnorm});
        const auto b = framelab::density_estimate(shifted, {R});
        CHECK(b.counts[0] >= lo.counts[0]);
        CHECK(b.counts[0] <= hi.counts[0]);
        static_cast<void>(a);
    }
}

TEST_CASE("point file round trip") {
    const std::string path = temp_path("framelab_pts_roundtrip.txt");
    PointSet pts = framelab::perturb(framelab::lattice(2, 1.0, 3.0), [](double) { return 0.3; }, 5);
    framelab::save_points(pts, path);
    PointSet back = framelab::load_points(path);
    CHECK(back.dim() == pts.dim());
    CHECK(back.coords() == pts.coords());  // %.17g round-trips exactly
    std::filesystem::remove(path);
}

TEST_CASE("point file parse errors carry line numbers") {
    const std::string path = temp_path("framelab_pts_bad.txt");
    {
        std::ofstream out(path);
        out << "# comment\n";
        out << "dim 2\n";
        out << "0 0\n";
        out << "1 bad\n";
    }
    try {
        framelab::load_points(path);
        CHECK(false);
    } catch (const framelab::parse_error& e) {
        CHECK(e.line() == 4);
    }
    {
        std::ofstream out(path);
        out << "dim 2\n0 0\n1\n";
    }
    CHECK_THROWS_AS(framelab::load_points(path), framelab::parse_error);
    {
        std::ofstream out(path);
        out << "dim 2\n0 0\n0 0\n";
    }
    CHECK_THROWS_AS(framelab::load_points(path), std::invalid_argument);  // duplicate point
    {
        std::ofstream out(path);
        out << "dim 3\n# just a header\n";
    }
    PointSet empty = framelab::load_points(path);
    CHECK(empty.empty());
    CHECK(empty.dim() == 3);
    std::filesystem::remove(path);
}
