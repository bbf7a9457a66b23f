#include <doctest.h>

#include <cmath>
#include <random>

#include "latk/lattice.hpp"
#include "latk/modular.hpp"

using namespace latk;

namespace {
GroupWord random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> kind(0, 2), shift(-2, 2), len(1, max_len);
    GroupWord w;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) {
        switch (kind(rng)) {
        case 0: w.gens.push_back({GenKind::Invert, 0}); break;
        case 1: w.gens.push_back({GenKind::Translate, shift(rng)}); break;
        default: w.gens.push_back({GenKind::Reflect, 0}); break;
        }
    }
    return w;
}
} // namespace

TEST_CASE("generator basics") {
    const UpperHalfPoint z{0.3, 0.7};
    const UpperHalfPoint zz = apply(GroupGenerator{GenKind::Invert, 0},
                                    apply(GroupGenerator{GenKind::Invert, 0}, z));
    CHECK(zz.x == doctest::Approx(z.x).epsilon(1e-15));
    CHECK(zz.y == doctest::Approx(z.y).epsilon(1e-15));

    const UpperHalfPoint hex = hexagonal_point();
    const UpperHalfPoint t = apply(GroupGenerator{GenKind::Translate, 1}, hex);
    CHECK(t.x == doctest::Approx(1.5));
    CHECK(t.y == doctest::Approx(hex.y));
}

TEST_CASE("word round trips through its inverse") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.05, 3.0);
    for (int i = 0; i < 100; ++i) {
        const GroupWord w = random_word(rng, 12);
        const UpperHalfPoint z{ux(rng), uy(rng)};
        const UpperHalfPoint back = apply(inverse(w), apply(w, z));
        CHECK(std::abs(back.x - z.x) <= 1e-12);
        CHECK(std::abs(back.y - z.y) <= 1e-12);
    }
}

TEST_CASE("word text form round trips") {
    std::mt19937 rng(77);
    for (int i = 0; i < 50; ++i) {
        const GroupWord w = random_word(rng, 8);
        const GroupWord back = word_from_string(word_to_string(w));
        REQUIRE(back.gens.size() == w.gens.size());
        for (size_t k = 0; k < w.gens.size(); ++k) {
            CHECK(back.gens[k].kind == w.gens[k].kind);
            CHECK(back.gens[k].shift == w.gens[k].shift);
        }
    }
    CHECK_THROWS_AS(word_from_string("Q"), DomainError);
    CHECK_THROWS_AS(word_from_string("T"), DomainError);
}

TEST_CASE("reduction lands in the closed domain and certifies itself") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.02, 4.0);
    for (int i = 0; i < 200; ++i) {
        const UpperHalfPoint z{ux(rng), uy(rng)};
        const FundamentalDomainPoint r = reduce(z);
        CHECK(in_fundamental_domain(r.point));
        // the recorded word maps input to output
        const UpperHalfPoint img = apply(r.word, z);
        CHECK(std::abs(img.x - r.point.x) <= 1e-12);
        CHECK(std::abs(img.y - r.point.y) <= 1e-12);
        // idempotence
        const FundamentalDomainPoint rr = reduce(r.point);
        CHECK(std::abs(rr.point.x - r.point.x) <= 1e-12);
        CHECK(std::abs(rr.point.y - r.point.y) <= 1e-12);
    }
}

TEST_CASE("reduction preserves the lattice sums") {
    const UpperHalfPoint z{2.3, 0.4};
    const FundamentalDomainPoint r = reduce(z);
    CHECK(in_fundamental_domain(r.point));
    CHECK(theta_2d(1.0, z).value == doctest::Approx(theta_2d(1.0, r.point).value).epsilon(1e-12));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.05, 3.0), ua(1.0, 4.0), ub(0.0, 3.0);
    for (int i = 0; i < 40; ++i) {
        const UpperHalfPoint p{ux(rng), uy(rng)};
        const EnergyParams prm{ua(rng), ub(rng)};
        const FundamentalDomainPoint red = reduce(p);
        const double e_in = difference_energy(prm, p).value;
        const double e_out = difference_energy(prm, red.point).value;
        CHECK(std::abs(e_in - e_out) <= 1e-10);
    }
}

TEST_CASE("points already reduced stay put") {
    const FundamentalDomainPoint hex = reduce(hexagonal_point());
    CHECK(hex.point.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hex.point.y == doctest::Approx(hexagonal_point().y).epsilon(1e-15));

    const FundamentalDomainPoint tall = reduce({0.0, 5.0});
    CHECK(tall.point.x == doctest::Approx(0.0));
    CHECK(tall.point.y == doctest::Approx(5.0));
    CHECK(tall.word.empty());
}

TEST_CASE("energy invariance under random group words") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.05, 3.0), ua(1.0, 5.0), ub(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const GroupWord w = random_word(rng, 6);
        const UpperHalfPoint z{ux(rng), uy(rng)};
        const UpperHalfPoint gz = apply(w, z);
        const EnergyParams prm{ua(rng), ub(rng)};
        CHECK(std::abs(difference_energy(prm, z).value - difference_energy(prm, gz).value) <=
              1e-10);
    }
}

TEST_CASE("critical ray membership") {
    CHECK(is_on_gamma_c({0.5, 1.0}, 1e-9));
    CHECK(is_on_gamma_c(hexagonal_point(), 1e-9));
    CHECK_FALSE(is_on_gamma_c({0.49, 1.0}, 1e-6));
    CHECK_FALSE(is_on_gamma_c({0.5, 0.5}, 1e-6));
}

TEST_CASE("reduction rejects points off the upper half-plane") {
    CHECK_THROWS_AS(reduce({0.3, 0.0}), DomainError);
    CHECK_THROWS_AS(apply(GroupGenerator{GenKind::Invert, 0}, {0.3, -1.0}), DomainError);
}
