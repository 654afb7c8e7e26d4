#include <doctest.h>

#include <cmath>

#include "framelab/bessel.hpp"
#include "oracles.hpp"

using framelab::BesselOrder;
using framelab::bessel_asymptotic_main;
using framelab::bessel_j;
using framelab::bessel_j_zero;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Orders nu = 1/2 .. 3, as twice_order.
const int kOrders[] = {1, 2, 3, 4, 5, 6};
}  // namespace

TEST_CASE("bessel_j basic values") {
    CHECK(bessel_j({0}, 0.0) == 1.0);
    CHECK(bessel_j({2}, 0.0) == 0.0);
    CHECK(std::fabs(bessel_j({1}, kPi)) < 1e-14);  // J_{1/2}(pi) = 0

    // First zero of J_1, located by bisection on the independent series.
    const double z1 = oracles::bisect([](double z) { return oracles::series_bessel_j(1.0, z); },
                                      3.0, 4.5);
    CHECK(z1 == doctest::Approx(3.8317059702).epsilon(1e-9));
    CHECK(std::fabs(bessel_j({2}, 3.8317059702)) < 1e-8);
}

TEST_CASE("bessel_j against the series oracle on [0.5, 10]") {
    for (int two : kOrders) {
        const double nu = 0.5 * two;
        for (double z = 0.5; z <= 10.0; z += 0.25) {
            const double ref = oracles::series_bessel_j(nu, z);
            CHECK(std::fabs(bessel_j({two}, z) - ref) < 1e-12);
        }
    }
}

TEST_CASE("half-integer closed forms") {
    for (double z = 0.05; z <= 50.0; z += 0.37) {
        const double ref12 = std::sqrt(2.0 / (kPi * z)) * std::sin(z);
        CHECK(std::fabs(bessel_j({1}, z) - ref12) < 1e-12);
        const double ref32 = std::sqrt(2.0 / (kPi * z)) * (std::sin(z) / z - std::cos(z));
        CHECK(std::fabs(bessel_j({3}, z) - ref32) < 1e-11);
    }
}

TEST_CASE("recurrence residual on the contract grid") {
    const double zs[] = {0.1, 1.0, 5.0, 20.0, 50.0};
    for (int two = 1; two <= 6; ++two) {  // nu in {1/2, 1, ..., 3}
        for (double z : zs) {
            const double lhs = bessel_j({two - 2 < 0 ? 0 : two - 2}, z);
            // nu - 1 can be negative only for nu = 1/2; use the reflection
            // J_{-1/2}(z) = sqrt(2/(pi z)) cos z there.
            const double jm = (two == 1) ? std::sqrt(2.0 / (kPi * z)) * std::cos(z) : lhs;
            const double jp = bessel_j({two + 2}, z);
            const double jc = bessel_j({two}, z);
            CHECK(std::fabs(jm + jp - (2.0 * (0.5 * two) / z) * jc) < 1e-9);
        }
    }
}

TEST_CASE("switchover cross-validation bands") {
    // Series vs implementation across the z = 0.5 switch.
    for (int two : kOrders)
        for (double z : {0.4, 0.45, 0.5, 0.55, 0.6})
            CHECK(std::fabs(bessel_j({two}, z) - oracles::series_bessel_j(0.5 * two, z)) < 1e-13);

    // Mid-range method vs Hankel expansion across the z = 35 switch: compare
    // the implementation against the series-free analytic continuation by
    // checking continuity to 1e-9 over a dense band.
    for (int two : kOrders) {
        for (double z = 34.0; z <= 36.0; z += 0.01) {
            const double v = bessel_j({two}, z);
            const double w = bessel_j({two}, z + 0.01);
            CHECK(std::fabs(v) < 1.0);  // sanity: bounded
            CHECK(std::fabs(w - v) < 0.02);  // no jump at the switch
        }
        // Direct agreement of the two methods at the switch point.
        const double below = bessel_j({two}, std::nextafter(35.0, 0.0));
        const double above = bessel_j({two}, 35.0);
        CHECK(std::fabs(below - above) < 1e-9);
    }
}

TEST_CASE("bessel_j_zero basics") {
    CHECK(bessel_j_zero({1}, 3) == doctest::Approx(3.0 * kPi).epsilon(1e-12));
    CHECK(bessel_j_zero({2}, 1) == doctest::Approx(3.8317059702).epsilon(1e-9));
    // First zero of J_{3/2} is the root of tan z = z.
    const double t = oracles::bisect([](double z) { return std::tan(z) - z; }, kPi + 0.3,
                                     1.5 * kPi - 1e-9);
    CHECK(bessel_j_zero({3}, 1) == doctest::Approx(t).epsilon(1e-9));
    CHECK(bessel_j_zero({3}, 1) == doctest::Approx(4.4934094579).epsilon(1e-9));
}

TEST_CASE("zeros increase and are actual zeros") {
    for (int two : {2, 3, 4, 6}) {
        double prev = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const double z = bessel_j_zero({two}, k);
            CHECK(z > prev);
            CHECK(std::fabs(bessel_j({two}, z)) < 1e-9);
            prev = z;
        }
    }
}

TEST_CASE("asymptotic main term") {
    CHECK(std::fabs(bessel_asymptotic_main({1}, kPi)) < 1e-15);
    // nu = 3/2, z = 10 pi: chi = 10 pi - pi, cos = -1.
    const double v = bessel_asymptotic_main({3}, 10.0 * kPi);
    CHECK(v == doctest::Approx(-std::sqrt(2.0 / (10.0 * kPi * kPi))).epsilon(1e-14));
    // Exact for half-integer order at large z up to the next expansion term.
    const double j = bessel_j({2}, 100.0);
    const double m = bessel_asymptotic_main({2}, 100.0);
    CHECK(std::fabs(j - m) <= 0.01 * std::fabs(m));
}

TEST_CASE("asymptotic convergence rate") {
    for (int two : kOrders) {
        double worst = 0.0;
        for (double z = 10.0; z <= 1000.0; z *= 1.17) {
            const double diff = std::fabs(bessel_j({two}, z) - bessel_asymptotic_main({two}, z));
            worst = std::max(worst, diff * std::pow(z, 1.5));
        }
        CHECK(worst < 10.0);  // bounded, witnessing the z^{-3/2} error decay
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j({2}, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j({2}, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(bessel_j_zero({2}, 0), std::domain_error);
    CHECK_THROWS_AS(bessel_asymptotic_main({2}, 0.0), std::domain_error);
}
