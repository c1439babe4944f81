#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "divsum/arith.hpp"
#include "divsum/farey.hpp"
#include "oracles.hpp"

using namespace divsum;

TEST_CASE("farey enumeration") {
    CHECK(farey_enumerate(1) == std::vector<Fraction>{{1, 1}});
    CHECK(farey_enumerate(3) == std::vector<Fraction>{{1, 3}, {1, 2}, {2, 3}, {1, 1}});
    CHECK_THROWS_AS(farey_enumerate(0), std::invalid_argument);

    const auto t = build_tables(100);
    i64 phi_sum = 0;
    for (i64 q = 1; q <= 100; ++q) phi_sum += t.phi[q];
    CHECK(phi_sum == 3'044);
    CHECK(static_cast<i64>(farey_enumerate(100).size()) == phi_sum);

    // matches exhaustive enumeration, order included
    for (const i64 Q : {i64{7}, i64{20}, i64{53}}) {
        const auto fast = farey_enumerate(Q);
        const auto slow = oracles::farey_exhaustive(Q);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].a == slow[i].a);
            CHECK(fast[i].q == slow[i].q);
        }
    }
}

TEST_CASE("neighbor determinant identity") {
    for (i64 Q = 1; Q <= 150; ++Q) {
        const auto fr = farey_enumerate(Q);
        for (std::size_t i = 1; i < fr.size(); ++i)
            REQUIRE(fr[i].a * fr[i - 1].q - fr[i - 1].a * fr[i].q == 1);
    }
}

TEST_CASE("cover check: the Dirichlet arcs cover [1/Q, 1+1/Q]") {
    for (i64 Q = 2; Q <= 100; ++Q) {
        CAPTURE(Q);
        REQUIRE(cover_check(Q) <= 0.0);
    }
    CHECK(cover_check(10) <= 0.0);
    CHECK(cover_check(137) <= 0.0);
    CHECK_THROWS_AS(cover_check(1), std::invalid_argument);
}

TEST_CASE("cover check under the integration half-width") {
    // 1/(2q sqrt(x)) arcs cover exactly when Q >= 2 sqrt(x)
    const i64 x = 100;
    CHECK(cover_check(20, HalfWidthRule::integration, x) <= 0.0);
    CHECK(cover_check(19, HalfWidthRule::integration, x) > 0.0);
    // the 1/(4x) arcs never cover at this scale
    CHECK(cover_check(10, HalfWidthRule::fixed_4x, x) > 0.0);
}

TEST_CASE("disjointness of the 1/(4x) arcs") {
    CHECK(disjoint_check(16, 4) > 0.0);
    CHECK(disjoint_check(10'000, 50) > 0.0);
    CHECK(disjoint_check(1'000, isqrt(1'000) / 2) > 0.0);
    CHECK(disjoint_check(100'000, isqrt(100'000) / 2) > 0.0);
    CHECK(disjoint_check(100, 1) == std::numeric_limits<double>::infinity());

    // value matches a brute-force scan over all pairs at small sizes
    const auto fr = oracles::farey_exhaustive(6);
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fr.size(); ++i)
        for (std::size_t j = i + 1; j < fr.size(); ++j)
            min_sep = std::min(min_sep, std::abs(fr[i].value() - fr[j].value()) - 1.0 / (2.0 * 64.0));
    CHECK(disjoint_check(64, 6) == doctest::Approx(min_sep).epsilon(1e-12));
}

TEST_CASE("locate_arc fixed points") {
    for (const i64 Q : {i64{2}, i64{10}, i64{100}}) {
        const auto loc = locate_arc(0.5, Q);
        CHECK(loc.frac == Fraction{1, 2});
        CHECK(loc.beta == 0.0);
    }
    const auto loc = locate_arc(0.333, 10);
    CHECK(loc.frac == Fraction{1, 3});
    CHECK(loc.beta == doctest::Approx(-1.0 / 3'000.0).epsilon(1e-9));
    CHECK(std::abs(loc.beta) <= 1.0 / 30.0);

    CHECK(locate_arc(1.0 + 1.0 / 7.0, 7).frac == Fraction{1, 1});
    CHECK_THROWS_AS(locate_arc(0.01, 10), std::domain_error);
    CHECK_THROWS_AS(locate_arc(1.5, 10), std::domain_error);
}

TEST_CASE("locate_arc satisfies the Dirichlet contract at random points") {
    const i64 Q = 200;
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(1.0 / static_cast<double>(Q), 1.0 + 1.0 / static_cast<double>(Q));
    for (int i = 0; i < 1'000; ++i) {
        const double alpha = u(rng);
        const auto loc = locate_arc(alpha, Q);
        CAPTURE(alpha);
        REQUIRE(loc.frac.q >= 1);
        REQUIRE(loc.frac.q <= Q);
        REQUIRE(std::gcd(loc.frac.a, loc.frac.q) == 1);
        REQUIRE(std::abs(loc.beta) <= 1.0 / (static_cast<double>(loc.frac.q) * static_cast<double>(Q)));
        CHECK(loc.beta == doctest::Approx(alpha - loc.frac.value()).epsilon(1e-15));
    }
}

TEST_CASE("locate_arc agrees with the exhaustive nearest-admissible search") {
    for (const i64 Q : {i64{3}, i64{11}, i64{25}, i64{50}}) {
        const double lo = 1.0 / static_cast<double>(Q);
        for (int k = 0; k <= 2'000; ++k) {
            const double alpha = lo + (1.0) * static_cast<double>(k) / 2'000.0;
            const auto got = locate_arc(alpha, Q);
            const auto want = oracles::nearest_admissible(alpha, Q);
            CAPTURE(Q);
            CAPTURE(alpha);
            REQUIRE(got.frac.a == want.a);
            REQUIRE(got.frac.q == want.q);
        }
    }
}

TEST_CASE("arc systems") {
    const auto arcs = make_arcs(10, HalfWidthRule::dirichlet);
    REQUIRE(arcs.size() == 32); // sum of phi(q), q <= 10
    for (const auto& arc : arcs) {
        CHECK(arc.half_width == doctest::Approx(1.0 / (static_cast<double>(arc.center.q) * 10.0)));
        CHECK(arc.lo() == doctest::Approx(arc.center.value() - arc.half_width));
        CHECK(arc.hi() == doctest::Approx(arc.center.value() + arc.half_width));
    }
    const auto dis = make_arcs(5, HalfWidthRule::fixed_4x, 1'000);
    for (const auto& arc : dis) CHECK(arc.half_width == doctest::Approx(1.0 / 4'000.0));
    CHECK_THROWS_AS(make_arcs(5, HalfWidthRule::fixed_4x), std::invalid_argument);
}
