#include <doctest.h>

#include <array>
#include <cmath>

#include "latk/phase.hpp"

using namespace latk;

TEST_CASE("phase classification across the three regimes") {
    const LineSearchConfig cfg;
    const PhaseResult hex = classify_phase({2.0, 2.5}, cfg);
    CHECK(hex.phase == Phase::Hexagonal);
    CHECK(hex.y_b == doctest::Approx(cfg.y_min));

    const PhaseResult skinny = classify_phase({2.0, 2.82}, cfg);
    CHECK(skinny.phase == Phase::SkinnyRhombic);
    CHECK(skinny.y_b > cfg.y_min);
    CHECK(skinny.y_b < cfg.y_max);

    const PhaseResult gone = classify_phase({2.0, 3.0}, cfg);
    CHECK(gone.phase == Phase::Nonexistent);
}

TEST_CASE("the second threshold does not depend on the scale") {
    // The tail decays like e^{-pi y/(2 alpha)}, so the ceiling must grow with
    // alpha for the escape to show inside the search window.
    LineSearchConfig tall;
    tall.y_max = 150.0;
    for (double a : {2.0, 3.0, 5.0}) {
        const PhaseResult r = classify_phase({a, kBc2}, tall);
        CAPTURE(a);
        CHECK(r.phase == Phase::Nonexistent);
    }
}

TEST_CASE("first threshold: bracketing and location") {
    const LineSearchConfig cfg;
    for (double a : {2.0, 2.5, 3.0}) {
        const ThresholdResult t = find_bc1(a, 1e-4, cfg);
        CAPTURE(a);
        CHECK(t.b_c1 > 2.0);
        CHECK(t.b_c1 < kBc2);
        CHECK(t.bracket_width <= 1e-4);
        CHECK(classify_phase({a, t.b_c1 - 0.01}, cfg).phase == Phase::Hexagonal);
        // probe above the threshold but strictly below 2 sqrt(2)
        const double above = t.b_c1 + std::min(0.01, 0.5 * (kBc2 - t.b_c1));
        CHECK(classify_phase({a, above}, cfg).phase == Phase::SkinnyRhombic);
    }
    // threshold grows with the scale
    CHECK(find_bc1(2.0, 1e-4, cfg).b_c1 < find_bc1(2.5, 1e-4, cfg).b_c1);
    CHECK(find_bc1(2.5, 1e-4, cfg).b_c1 < find_bc1(3.0, 1e-4, cfg).b_c1);
}

TEST_CASE("minimizer curve: monotone and divergent toward the second threshold") {
    const std::array<double, 3> bs{2.81, 2.82, 2.825};
    const auto curve = trace_yb_curve(2.0, bs);
    REQUIRE(curve.size() == 3);
    double prev = 0.0;
    for (const auto& r : curve) {
        CHECK(r.phase == Phase::SkinnyRhombic);
        CHECK(r.y_b > prev);
        prev = r.y_b;
    }

    // below the threshold the curve reports the hexagonal ordinate
    const std::array<double, 2> low{2.1, 2.4};
    for (const auto& r : trace_yb_curve(2.0, low)) {
        CHECK(r.phase == Phase::Hexagonal);
        CHECK(r.y_b == doctest::Approx(LineSearchConfig{}.y_min));
    }

    // near 2 sqrt(2) the minimizer escapes past y = 5
    LineSearchConfig tall;
    tall.y_max = 200.0;
    const std::array<double, 1> edge{2.8284};
    const auto far = trace_yb_curve(2.0, edge, tall);
    CHECK(far[0].y_b > 5.0);
}

TEST_CASE("minimizer curve is continuous away from the transition") {
    const LineSearchConfig cfg;
    const double bc1 = find_bc1(2.0, 1e-4, cfg).b_c1;
    double prev_yb = -1.0;
    for (int k = 1; k <= 5; ++k) {
        const PhaseResult r = classify_phase({2.0, bc1 + 2e-3 + 1e-3 * k}, cfg);
        REQUIRE(r.phase == Phase::SkinnyRhombic);
        if (prev_yb > 0.0) CHECK(std::abs(r.y_b - prev_yb) < 0.5);
        prev_yb = r.y_b;
    }
}

TEST_CASE("large-y diagnostics above and at the second threshold") {
    const std::array<double, 4> ys{5.0, 10.0, 20.0, 40.0};

    const AsymptoticsReport sink = check_nonexistence_asymptotics({2.0, 3.0}, ys);
    CHECK(sink.strictly_decreasing);
    CHECK(sink.negative_at_end);
    CHECK(sink.rel_dev_at_last <= 1e-6);

    const AsymptoticsReport edge = check_nonexistence_asymptotics({2.0, kBc2}, ys);
    CHECK(edge.strictly_decreasing);
    CHECK(edge.all_positive);
    CHECK_FALSE(edge.negative_at_end);
    CHECK(edge.energy.back() < 1e-9);
    CHECK(edge.energy.back() > 0.0);

    // leading prefactor dominates below the second threshold
    const std::array<double, 2> far{30.0, 40.0};
    const AsymptoticsReport sub = check_nonexistence_asymptotics({2.0, 2.7}, far);
    CHECK(sub.rel_dev_at_last <= 1e-6);
}

TEST_CASE("diagnostic input validation") {
    const std::array<double, 2> bad{5.0, 5.0};
    CHECK_THROWS_AS(check_nonexistence_asymptotics({2.0, 3.0}, bad), DomainError);
    CHECK_THROWS_AS(find_bc1(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(find_bc1(-2.0, 1e-4), DomainError);
}
