#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qde/walls.hpp"

using namespace qde;

namespace {

Slope s7_11() { return {Rat(1) + Rat(1, 7), Rat(1) + Rat(1, 11)}; }

const Crossing* find_wall(const PathTrace& tr, const std::vector<int>& dprim, const Rat& level) {
    for (const Crossing& c : tr.crossings)
        if (c.wall.dprim == dprim && c.wall.level == level) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("direction census: three families for the one-box sector, nine for the three-box one") {
    auto ctx = QuiverContext::hilb();

    WallArrangement w1(ctx, {1, 1});
    REQUIRE(w1.families().size() == 3);
    CHECK(w1.families()[0].d == std::vector<int>{0, 1});
    CHECK(w1.families()[0].kind == WallKind::sl2);
    CHECK(w1.families()[1].d == std::vector<int>{1, 0});
    CHECK(w1.families()[1].kind == WallKind::sl2);
    CHECK(w1.families()[2].d == std::vector<int>{1, 1});
    CHECK(w1.families()[2].kind == WallKind::heisenberg);

    WallArrangement w3(ctx, {3, 3});
    std::vector<std::pair<std::vector<int>, WallKind>> expect = {
        {{0, 1}, WallKind::sl2},        {{1, 0}, WallKind::sl2},  {{1, 1}, WallKind::heisenberg},
        {{1, 2}, WallKind::sl2},        {{2, 1}, WallKind::sl2},  {{2, 2}, WallKind::heisenberg},
        {{2, 3}, WallKind::sl2},        {{3, 2}, WallKind::sl2},  {{3, 3}, WallKind::heisenberg},
    };
    REQUIRE(w3.families().size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(w3.families()[i].d == expect[i].first);
        CHECK(w3.families()[i].kind == expect[i].second);
    }
}

TEST_CASE("one-box descending path crosses four walls in the hand-checked order") {
    auto ctx = QuiverContext::hilb();
    WallArrangement wa(ctx, {1, 1});
    PathTrace tr = wa.trace(s7_11(), path_end(s7_11(), {1, 1}));

    REQUIRE(tr.crossings.size() == 4);
    // tau values: delta level 2 at 9/77, y=1 at 1/11, x=1 at 1/7, delta
    // level 1 at 95/154; sorted they interleave as y, delta2, x, delta1.
    CHECK(tr.crossings[0].wall.dprim == std::vector<int>{0, 1});
    CHECK(tr.crossings[0].wall.level == Rat(1));
    CHECK(tr.crossings[0].tau == Rat(1, 11));
    CHECK(tr.crossings[1].wall.dprim == std::vector<int>{1, 1});
    CHECK(tr.crossings[1].wall.level == Rat(2));
    CHECK(tr.crossings[1].tau == Rat(9, 77));
    CHECK(tr.crossings[2].wall.dprim == std::vector<int>{1, 0});
    CHECK(tr.crossings[2].wall.level == Rat(1));
    CHECK(tr.crossings[2].tau == Rat(1, 7));
    CHECK(tr.crossings[3].wall.dprim == std::vector<int>{1, 1});
    CHECK(tr.crossings[3].wall.level == Rat(1));
    CHECK(tr.crossings[3].tau == Rat(95, 154));

    // Crossing point of the level-2 Heisenberg wall, computed by hand.
    CHECK(tr.crossings[1].point == Slope{Rat(79, 77), Rat(75, 77)});
    // Every crossing point satisfies its own wall equation.
    for (const Crossing& c : tr.crossings) {
        Rat pairing(0);
        for (std::size_t k = 0; k < c.point.size(); ++k) pairing += c.point[k] * Rat(c.wall.dprim[k]);
        CHECK(pairing == c.wall.level);
        CHECK(c.wall.ks == std::vector<int>{1});
    }
}

TEST_CASE("three-box descending path: 26 distinct walls, 18 + 8 by kind, multiples merged") {
    auto ctx = QuiverContext::hilb();
    WallArrangement wa(ctx, {3, 3});
    PathTrace tr = wa.trace(s7_11(), path_end(s7_11(), {1, 1}));

    REQUIRE(tr.crossings.size() == 26);
    int sl2 = 0, heis = 0, incidences = 0;
    for (const Crossing& c : tr.crossings) {
        (c.wall.kind == WallKind::sl2 ? sl2 : heis) += 1;
        incidences += static_cast<int>(c.wall.ks.size());
        for (std::size_t i = 1; i < c.wall.ks.size(); ++i) CHECK(c.wall.ks[i] > c.wall.ks[i - 1]);
    }
    CHECK(sl2 == 18);
    CHECK(heis == 8);
    // 18 sl2 incidences plus 2 + 4 + 6 Heisenberg family-level incidences.
    CHECK(incidences == 30);

    // Heisenberg walls sit at the eight rational levels with denominator
    // dividing 3; the contributing multiples are the k with k * level integral.
    std::vector<std::pair<Rat, std::vector<int>>> heis_expect = {
        {Rat(1, 3), {3}}, {Rat(1, 2), {2}}, {Rat(2, 3), {3}},       {Rat(1), {1, 2, 3}},
        {Rat(4, 3), {3}}, {Rat(3, 2), {2}}, {Rat(5, 3), {3}},       {Rat(2), {1, 2, 3}},
    };
    for (const auto& [level, ks] : heis_expect) {
        const Crossing* c = find_wall(tr, {1, 1}, level);
        REQUIRE(c != nullptr);
        CHECK(c->wall.kind == WallKind::heisenberg);
        CHECK(c->wall.ks == ks);
    }

    // sl2 wall counts per direction follow the pairing with L = (1,1).
    for (const auto& [d, count] : std::vector<std::pair<std::vector<int>, int>>{
             {{0, 1}, 1}, {{1, 0}, 1}, {{1, 2}, 3}, {{2, 1}, 3}, {{2, 3}, 5}, {{3, 2}, 5}}) {
        int seen = 0;
        for (const Crossing& c : tr.crossings)
            if (c.wall.dprim == d) ++seen;
        CHECK(seen == count);
    }

    // Strictly increasing path parameters, all interior.
    for (std::size_t i = 0; i < tr.crossings.size(); ++i) {
        CHECK(tr.crossings[i].tau > Rat(0));
        CHECK(tr.crossings[i].tau < Rat(1));
        if (i > 0) CHECK(tr.crossings[i].tau > tr.crossings[i - 1].tau);
    }
}

TEST_CASE("degenerate paths are rejected; the generic retry repairs them") {
    auto ctx = QuiverContext::hilb();
    WallArrangement wa(ctx, {1, 1});

    // Start on the level-1 Heisenberg wall: 2/5 + 3/5 = 1.
    Slope on_wall{Rat(2, 5), Rat(3, 5)};
    CHECK_THROWS_AS(wa.trace(on_wall, path_end(on_wall, {1, 1})), std::domain_error);

    // A diagonal start makes x=1 and y=1 meet the path at the same point.
    Slope diag{Rat(1) + Rat(1, 7), Rat(1) + Rat(1, 7)};
    CHECK_THROWS_AS(wa.trace(diag, path_end(diag, {1, 1})), std::domain_error);
    PathTrace repaired = wa.trace_generic(diag, path_end(diag, {1, 1}));
    CHECK(repaired.crossings.size() == 4);
    CHECK(repaired.start != diag);

    // A path parallel to a family simply never meets it.
    PathTrace vert = wa.trace(s7_11(), path_end(s7_11(), {1, 0}));
    REQUIRE(vert.crossings.size() == 2);
    CHECK(vert.crossings[0].wall.dprim == std::vector<int>{1, 0});
    CHECK(vert.crossings[0].wall.level == Rat(1));
    CHECK(vert.crossings[1].wall.dprim == std::vector<int>{1, 1});
    CHECK(vert.crossings[1].wall.level == Rat(2));
}

TEST_CASE("level-zero walls are crossed when the path leaves the positive cone") {
    auto ctx = QuiverContext::hilb();
    WallArrangement wa(ctx, {1, 1});

    Slope s{Rat(3, 2), Rat(11, 20)};
    PathTrace tr = wa.trace(s, path_end(s, {1, 1}));
    REQUIRE(tr.crossings.size() == 4);
    CHECK(tr.crossings[3].wall.dprim == std::vector<int>{0, 1});
    CHECK(tr.crossings[3].wall.level == Rat(0));

    Slope s2{Rat(3, 2), Rat(9, 20)};
    PathTrace tr2 = wa.trace(s2, path_end(s2, {1, 1}));
    REQUIRE(tr2.crossings.size() == 4);
    const Crossing* zero_delta = find_wall(tr2, {1, 1}, Rat(0));
    REQUIRE(zero_delta != nullptr);
    CHECK(zero_delta->wall.ks == std::vector<int>{1});
}
