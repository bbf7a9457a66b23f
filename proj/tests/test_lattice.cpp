#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "latk/lattice.hpp"
#include "oracles.hpp"

using namespace latk;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Random point of the closed fundamental domain with y <= y_cap.
UpperHalfPoint random_domain_point(std::mt19937& rng, double y_cap) {
    std::uniform_real_distribution<double> ux(0.0, 0.5), uu(0.0, 1.0);
    const double x = ux(rng);
    const double ylo = std::sqrt(1.0 - x * x);
    return {x, ylo + (y_cap - ylo) * uu(rng)};
}
} // namespace

TEST_CASE("theta2 on the square lattice") {
    // Product identity: the z = i lattice sum factors into theta(1;0)^2.
    const double brute = oracle::theta2_brute(1.0, 0.0, 1.0, 8);
    const EnergyValue v = theta_2d(1.0, {0.0, 1.0});
    CHECK(v.value == doctest::Approx(brute).epsilon(1e-14));
    CHECK(v.value == doctest::Approx(1.18034059901609623).epsilon(1e-14));
    const double t10 = 1.08643481121330801;
    CHECK(v.value == doctest::Approx(t10 * t10).epsilon(1e-14));
}

TEST_CASE("theta2 group invariance and hexagonal minimality") {
    const UpperHalfPoint z{0.31, 1.37};
    CHECK(theta_2d(1.7, z).value ==
          doctest::Approx(theta_2d(1.7, {z.x + 1.0, z.y}).value).epsilon(1e-14));

    const double hex_val = theta_2d(2.0, hexagonal_point()).value;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.2, 4.0);
    for (int i = 0; i < 50; ++i) {
        const UpperHalfPoint z2{ux(rng), uy(rng)};
        CHECK(hex_val <= theta_2d(2.0, z2).value + 1e-12);
    }
}

TEST_CASE("direct kernel against the brute-force oracle") {
    // at the hexagonal point the tail beyond |m|,|n| <= 10 is < 1e-25
    const double brute = oracle::kernel_brute(2.0, 0.5, 0.8660254037844386, 10);
    const EnergyValue v = k_energy_direct(2.0, hexagonal_point());
    CHECK(v.value == doctest::Approx(brute).epsilon(1e-13));
    CHECK(v.value == doctest::Approx(0.00489473347608549).epsilon(1e-12));
    CHECK(v.est_error <= TruncationPolicy{}.abs_tol);
}

TEST_CASE("kernel invariance under inversion") {
    const UpperHalfPoint z{0.23, 1.62};
    const double r2 = z.x * z.x + z.y * z.y;
    const UpperHalfPoint inv{-z.x / r2, z.y / r2};
    CHECK(k_energy_direct(1.4, z).value ==
          doctest::Approx(k_energy_direct(1.4, inv).value).epsilon(1e-13));
}

TEST_CASE("expansion route matches the direct route") {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> ua(1.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const UpperHalfPoint z = random_domain_point(rng, 6.0);
        const double a = ua(rng);
        const EnergyValue d = k_energy_direct(a, z);
        const EnergyValue e = k_energy_expansion(a, z);
        CAPTURE(a);
        CAPTURE(z.x);
        CAPTURE(z.y);
        CHECK(std::abs(d.value - e.value) <= d.est_error + e.est_error);
        CHECK(std::abs(d.value - e.value) <= 1e-12);
    }
    // spec sample: expansion needs few outer terms high on the ray
    const EnergyValue tall = k_energy_expansion(3.0, {0.5, 5.0});
    CHECK(tall.value == doctest::Approx(k_energy_direct(3.0, {0.5, 5.0}).value).epsilon(1e-11));
}

TEST_CASE("kernel is the scale derivative of theta2") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ua(1.0, 5.0);
    for (int i = 0; i < 20; ++i) {
        const UpperHalfPoint z = random_domain_point(rng, 5.0);
        const double a = ua(rng);
        auto th = [&](double t) { return theta_2d(t, z).value; };
        const double fd = -oracle::central_diff(th, a, 1e-5) / kPi;
        const double k = k_energy_direct(a, z).value;
        CHECK(std::abs(fd - k) <= 1e-6 * std::abs(k));
    }
}

TEST_CASE("difference energy degenerate and reflection cases") {
    const UpperHalfPoint z{0.37, 1.18};
    CHECK(difference_energy({1.7, 0.0}, z).value ==
          doctest::Approx(k_energy_expansion(1.7, z).value).epsilon(1e-15));
    // reflection invariance x -> -x
    CHECK(k_energy_expansion(2.3, z).value ==
          doctest::Approx(k_energy_expansion(2.3, {-z.x, z.y}).value).epsilon(1e-14));
}

TEST_CASE("tail behavior along the critical ray") {
    // b = 2 sqrt(2): positive, decreasing toward zero
    double prev = 1e300;
    for (double y : {5.0, 10.0, 20.0}) {
        const double e = difference_energy({2.0, kBc2}, {0.5, y}).value;
        CHECK(e > 0.0);
        CHECK(e < prev);
        prev = e;
    }
    // b = 3: decreasing without a floor (negative well before y = 40)
    prev = 1e300;
    bool negative_seen = false;
    for (double y : {5.0, 10.0, 20.0, 40.0}) {
        const double e = difference_energy({2.0, 3.0}, {0.5, y}).value;
        CHECK(e < prev);
        prev = e;
        negative_seen = negative_seen || e < 0.0;
    }
    CHECK(negative_seen);
}

TEST_CASE("gradient vanishes on the symmetry axes") {
    for (double x : {0.0, 0.5}) {
        const Gradient g = difference_energy_grad({2.0, 2.0}, {x, 1.4});
        CHECK(std::abs(g.dx) <= 1e-12);
    }
}

TEST_CASE("gradient is negative in x inside the domain") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ux(0.02, 0.48), ua(1.5, 5.0), ub(0.0, kBc2);
    for (int i = 0; i < 30; ++i) {
        const double x = ux(rng);
        const double y = std::sqrt(1.0 - x * x) + 0.01 + 3.0 * std::generate_canonical<double, 53>(rng);
        const Gradient g = difference_energy_grad({ua(rng), ub(rng)}, {x, y});
        CHECK(g.dx < 0.0);
    }
}

TEST_CASE("gradient components match finite differences") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ux(0.05, 0.45), uy(0.7, 6.0), ua(1.0, 4.0),
        ub(0.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const EnergyParams p{ua(rng), ub(rng)};
        const UpperHalfPoint z{ux(rng), uy(rng)};
        const Gradient g = difference_energy_grad(p, z);
        auto fx = [&](double t) { return difference_energy(p, {t, z.y}).value; };
        auto fy = [&](double t) { return difference_energy(p, {z.x, t}).value; };
        const double fdx = oracle::central_diff(fx, z.x, 1e-6);
        const double fdy = oracle::central_diff(fy, z.y, 1e-6);
        CAPTURE(p.alpha);
        CAPTURE(p.b);
        CAPTURE(z.x);
        CAPTURE(z.y);
        CHECK(std::abs(g.dx - fdx) <= 1e-6 * (1.0 + std::abs(g.dx)));
        CHECK(std::abs(g.dy - fdy) <= 1e-6 * (1.0 + std::abs(g.dy)));
    }
}

TEST_CASE("the hexagonal point is a critical point for every parameter set") {
    for (double a : {1.5, 2.0, 3.0, 5.0})
        for (double b : {0.0, 1.0, 2.0, 2.82, kBc2}) {
            const Gradient g = difference_energy_grad({a, b}, hexagonal_point());
            CHECK(std::hypot(g.dx, g.dy) <= 1e-9);
        }
}

TEST_CASE("coverage flags and domain errors") {
    CHECK(theorem_covered({2.0, 1.0}));
    CHECK_FALSE(theorem_covered({1.5, 1.0}));
    CHECK(nonexistence_regime({2.0, kBc2}));
    CHECK(nonexistence_regime({2.0, 3.0}));
    CHECK_FALSE(nonexistence_regime({2.0, 2.8}));

    CHECK_THROWS_AS(k_energy_direct(0.0, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(k_energy_direct(1.0, {0.0, -1.0}), DomainError);
    CHECK_THROWS_AS(difference_energy({2.0, -1.0}, {0.0, 1.0}), DomainError);
}

TEST_CASE("evaluation is safe under concurrent invocation") {
    const double expect = difference_energy({2.0, 2.5}, {0.3, 1.2}).value;
    std::vector<double> got(16, 0.0);
    std::vector<std::thread> pool;
    for (int t = 0; t < 16; ++t)
        pool.emplace_back([&, t] {
            double acc = 0.0;
            for (int i = 0; i < 50; ++i) acc = difference_energy({2.0, 2.5}, {0.3, 1.2}).value;
            got[t] = acc;
        });
    for (auto& th : pool) th.join();
    for (double g : got) CHECK(g == expect);
}

TEST_CASE("truncation bound respects the requested tolerance") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> ua(1.0, 5.0);
    const TruncationPolicy pol;
    for (int i = 0; i < 25; ++i) {
        const UpperHalfPoint z = random_domain_point(rng, 6.0);
        const double a = ua(rng);
        CHECK(k_energy_expansion(a, z).est_error <= pol.abs_tol);
        CHECK(k_energy_direct(a, z).est_error <= pol.abs_tol);
        CHECK(difference_energy({a, 2.5}, z).est_error <= pol.abs_tol);
    }
}

TEST_CASE("both y-derivative routes agree at the switch boundary") {
    // Placing the representation switch exactly at the lattice aspect makes
    // the balanced window contain the point; an extreme switch forces the
    // expansion route. The two must agree far below the FD tolerance.
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> ux(0.0, 0.5), uy(0.8, 4.0), ua(1.0, 4.0), ub(0.0, 2.8);
    for (int i = 0; i < 10; ++i) {
        const EnergyParams p{ua(rng), ub(rng)};
        const UpperHalfPoint z{ux(rng), uy(rng)};
        TruncationPolicy direct_route;
        direct_route.switch_threshold = z.y / p.alpha; // balanced window hits
        TruncationPolicy expansion_route;
        expansion_route.switch_threshold = 1e-9; // balanced window misses
        const double d1 = difference_energy_grad(p, z, direct_route).dy;
        const double d2 = difference_energy_grad(p, z, expansion_route).dy;
        CHECK(std::abs(d1 - d2) <= 1e-10 * (1.0 + std::abs(d1)));
    }
}
