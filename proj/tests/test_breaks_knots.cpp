#include "doctest.h"

#include <numeric>
#include <random>
#include <stdexcept>

#include "collox/breaks.hpp"
#include "collox/knots.hpp"
#include "helpers.hpp"

using namespace collox;

TEST_CASE("uniform breaks") {
    const BreakSequence b = build_uniform_breaks(0.0, 3.0, 3);
    CHECK(b.points == std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(b.intervals() == 3);
    CHECK(b.mesh_size() == 1.0);

    const BreakSequence wide = build_uniform_breaks(0.0, 40.0, 160);
    REQUIRE(wide.points.size() == 161);
    for (int i = 0; i < 160; ++i) {
        CHECK(wide.points[i + 1] - wide.points[i] == 0.25);
    }

    const BreakSequence single = build_uniform_breaks(0.0, 1.0, 1);
    CHECK(single.points == std::vector<double>{0.0, 1.0});

    CHECK_THROWS_AS(build_uniform_breaks(1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_breaks(2.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_breaks(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("knot construction fixtures") {
    {
        const BreakSequence xi{{1.0, 2.0, 3.0, 4.0}};
        const KnotVector kv = build_knots(xi, 4, {1, 3});
        CHECK(kv.knots == std::vector<double>{1, 1, 1, 1, 2, 2, 2, 3, 4, 4, 4, 4});
        CHECK(kv.dimension == 8);
        CHECK(kv.a() == 1.0);
        CHECK(kv.b() == 4.0);
    }
    {
        const BreakSequence xi{{0.0, 1.0, 2.0, 3.0}};
        const KnotVector kv = build_knots(xi, 4, {2, 2});
        CHECK(kv.knots == std::vector<double>{0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 3, 3});
        CHECK(kv.dimension == 8);
    }
    {
        const BreakSequence xi{{0.0, 1.0}};
        const KnotVector kv = build_knots(xi, 3, {});
        CHECK(kv.knots == std::vector<double>{0, 0, 0, 1, 1, 1});
        CHECK(kv.dimension == 3);
    }
}

TEST_CASE("knot construction validation") {
    const BreakSequence xi{{0.0, 1.0, 2.0}};
    CHECK_THROWS_AS(build_knots(xi, 4, {1, 2}), std::invalid_argument);  // nu length
    CHECK_THROWS_AS(build_knots(xi, 4, {0}), std::invalid_argument);
    CHECK_THROWS_AS(build_knots(xi, 4, {4}), std::invalid_argument);
    // A k-fold continuity request erases the break; allowed only on opt-in.
    const KnotVector kv = build_knots(xi, 4, {4}, true);
    CHECK(kv.knots == std::vector<double>{0, 0, 0, 0, 2, 2, 2, 2});
    CHECK(kv.dimension == 4);
}

TEST_CASE("dimension matches the continuity count") {
    std::mt19937 rng(7101);
    for (int trial = 0; trial < 200; ++trial) {
        const KnotVector kv = collox::testing::random_knots(rng);
        const int l = kv.breaks.intervals();
        const int nu_sum = std::accumulate(kv.continuity.begin(), kv.continuity.end(), 0);
        CHECK(kv.dimension == kv.order * l - nu_sum);
        CHECK(static_cast<int>(kv.knots.size()) == kv.dimension + kv.order);
        CHECK(kv.knots.front() == kv.breaks.points.front());
        CHECK(kv.knots.back() == kv.breaks.points.back());
    }
}

TEST_CASE("find_interval") {
    const KnotVector kv = build_knots(BreakSequence{{0.0, 1.0, 2.0, 3.0}}, 4, {2, 2});
    // t = {0,0,0,0,1,1,2,2,3,3,3,3}
    CHECK(find_interval(kv, 0.5) == 3);
    CHECK(find_interval(kv, 0.0) == 3);
    CHECK(find_interval(kv, 1.0) == 5);
    CHECK(find_interval(kv, 2.0) == 7);
    CHECK(find_interval(kv, 3.0) == 7);  // right endpoint: last nontrivial interval
    CHECK_THROWS_AS(find_interval(kv, -0.1), std::out_of_range);
    CHECK_THROWS_AS(find_interval(kv, 3.1), std::out_of_range);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const KnotVector r = collox::testing::random_knots(rng);
        std::uniform_real_distribution<double> pick(r.a(), r.b());
        const double x = pick(rng);
        const int j = find_interval(r, x);
        CHECK(r.knots[j] <= x);
        CHECK(r.knots[j] < r.knots[j + 1]);
        if (x < r.b()) {
            CHECK(x < r.knots[j + 1]);
        }
    }
}
