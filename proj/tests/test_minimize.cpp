#include <doctest.h>

#include <cmath>
#include <random>

#include "latk/minimize.hpp"

using namespace latk;

TEST_CASE("scalar minimizer on a smooth well") {
    LineSearchConfig cfg;
    cfg.x_tol = 1e-10;
    auto f = [](double t) { return (t - 2.0) * (t - 2.0) + 0.7; };
    const MinimizeResult r = minimize_scalar(f, 0.9, 50.0, cfg);
    CHECK(r.argmin.y == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.kind == MinKind::Interior);

    // argmin is invariant under positive rescaling of the objective
    auto f7 = [&](double t) { return 7.0 * f(t); };
    const MinimizeResult r7 = minimize_scalar(f7, 0.9, 50.0, cfg);
    CHECK(r7.argmin.y == doctest::Approx(r.argmin.y).epsilon(1e-7));
}

TEST_CASE("the three regimes along the critical ray") {
    const LineSearchConfig cfg;
    const MinimizeResult hex = minimize_on_gamma_c({2.0, 2.0}, cfg);
    CHECK(hex.kind == MinKind::LeftEndpointHexagonal);
    CHECK(hex.argmin.y == doctest::Approx(cfg.y_min).epsilon(1e-12));
    CHECK(hex.argmin.x == 0.5);

    const MinimizeResult skinny = minimize_on_gamma_c({2.0, 2.81}, cfg);
    CHECK(skinny.kind == MinKind::Interior);
    CHECK(skinny.argmin.y > cfg.y_min + 1.0);

    const MinimizeResult ceil = minimize_on_gamma_c({2.0, kBc2}, cfg);
    CHECK(ceil.kind == MinKind::CeilingHit);
    CHECK(ceil.argmin.y >= cfg.y_max - cfg.x_tol);
}

TEST_CASE("one- and two-dimensional searches agree") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ua(2.0, 5.0), ub(0.1, kBc2 - 1e-6);
    LineSearchConfig cfg;
    for (int i = 0; i < 20; ++i) {
        const EnergyParams p{ua(rng), ub(rng)};
        const MinimizeResult one = minimize_on_gamma_c(p, cfg);
        const MinimizeResult two = minimize_2d(p, cfg);
        CAPTURE(p.alpha);
        CAPTURE(p.b);
        CHECK(std::abs(one.value - two.value) <= 1e-9);
        // the 2-D argmin settles on the critical ray
        CHECK(std::abs(two.argmin.x - 0.5) <= 1e-6);
    }
}

TEST_CASE("two-dimensional search at b = 0 recovers the hexagonal point") {
    const LineSearchConfig cfg;
    const MinimizeResult r = minimize_2d({2.0, 0.0}, cfg);
    CHECK(r.kind == MinKind::LeftEndpointHexagonal);
    CHECK(std::abs(r.argmin.x - 0.5) <= 1e-6);
    CHECK(std::abs(r.argmin.y - cfg.y_min) <= 1e-6);
}

TEST_CASE("cross-method value agreement at a spec sample") {
    const EnergyParams p{3.0, 2.5};
    const LineSearchConfig cfg;
    const MinimizeResult one = minimize_on_gamma_c(p, cfg);
    const MinimizeResult two = minimize_2d(p, cfg);
    CHECK(std::abs(one.value - two.value) <= cfg.f_tol * 10.0 + 1e-12);
}

TEST_CASE("one-sided derivative vanishes at a hexagonal endpoint result") {
    const LineSearchConfig cfg;
    for (double b : {0.0, 1.0, 2.0}) {
        const MinimizeResult r = minimize_on_gamma_c({2.0, b}, cfg);
        REQUIRE(r.kind == MinKind::LeftEndpointHexagonal);
        const Gradient g = difference_energy_grad({2.0, b}, {0.5, cfg.y_min});
        CHECK(g.dy >= -cfg.f_tol);
    }
}

TEST_CASE("interior minimizer location grows with the mixing coefficient") {
    const LineSearchConfig cfg;
    double prev = 0.0;
    for (double b : {2.81, 2.82, 2.825, 2.828}) {
        const MinimizeResult r = minimize_on_gamma_c({2.0, b}, cfg);
        CHECK(r.argmin.y >= prev);
        prev = r.argmin.y;
    }
}

TEST_CASE("transversal monotonicity certificates") {
    const MonotonicityReport a = certify_transversal_monotonicity(2.0, kBc2, 20, 20, 10.0);
    CHECK(a.violations.empty());
    CHECK(a.min_margin > 0.0);
    CHECK(a.points == 400);

    const MonotonicityReport b = certify_transversal_monotonicity(1.5, 2.0, 20, 20, 10.0);
    CHECK(b.violations.empty());

    const MonotonicityReport c = certify_transversal_monotonicity(2.0, 0.0, 15, 15, 8.0);
    CHECK(c.violations.empty());
}

TEST_CASE("configuration validation") {
    LineSearchConfig bad;
    bad.y_max = 0.1;
    CHECK_THROWS_AS(minimize_on_gamma_c({2.0, 1.0}, bad), DomainError);
    bad = {};
    bad.scan_ratio = 1.0;
    CHECK_THROWS_AS(minimize_on_gamma_c({2.0, 1.0}, bad), DomainError);
    CHECK_THROWS_AS(certify_transversal_monotonicity(-1.0, 0.0, 10, 10, 5.0), DomainError);
}
