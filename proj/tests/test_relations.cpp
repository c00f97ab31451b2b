#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "linea/error.hpp"
#include "linea/relations.hpp"
#include "support.hpp"

using namespace linea;
using geometry::Point;

namespace {

BuildingRecord box(BuildingId id, Point c, double len, double wid, double deg = 0.0) {
    return make_building(id, geometry::rectangle(c, len, wid, deg));
}

ProximityEdge edge_between(const BuildingRecord& a, const BuildingRecord& b) {
    const bool swap = b.id < a.id;
    const auto& lo = swap ? b : a;
    const auto& hi = swap ? a : b;
    return {lo.id, hi.id, geometry::min_distance(lo.footprint, hi.footprint), geometry::direction_deg(lo.centroid, hi.centroid),
            geometry::facing_ratio(lo.sbr, hi.sbr)};
}

}  // namespace

TEST_CASE("similarity examples") {
    const Thresholds t;
    const auto a = box(0, {0, 0}, 10, 10);
    const auto s = similarity(a, box(1, {20, 0}, 10, 10), t);
    CHECK(s.a_r == doctest::Approx(1));
    CHECK(s.o_r == doctest::Approx(0));
    CHECK(s.e_r == doctest::Approx(1));
    CHECK(s.pass);

    const auto big = similarity(box(0, {0, 0}, 10, 10), box(1, {30, 0}, 21, 10), t);
    CHECK(big.a_r == doctest::Approx(2.1));
    CHECK_FALSE(big.pass);

    const auto wrap = similarity(box(0, {0, 0}, 12, 8, 5), box(1, {30, 0}, 12, 8, 175), t);
    CHECK(wrap.o_r == doctest::Approx(10));
    CHECK(wrap.pass);

    // 4 edges against 6: ratio 1.5 sits on the threshold.
    const auto l = make_building(2, geometry::Polygon({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 3}, {0, 3}}));
    const auto sq = box(3, {10, 0}, 3, 3);
    const auto e = similarity(sq, l, t);
    CHECK(e.e_r == doctest::Approx(1.5));
    CHECK(e.pass);
}

TEST_CASE("length clamp") {
    CHECK(clamp_length(1.5, 2) == 2);
    CHECK(clamp_length(5, 2) == 5);
    CHECK(clamp_length(2, 2) == 2);
}

TEST_CASE("linear triple examples") {
    const Thresholds t;
    SUBCASE("equal squares on a line") {
        const auto a = box(0, {0, 0}, 10, 10), b = box(1, {15, 0}, 10, 10), c = box(2, {30, 0}, 10, 10);
        const auto r = linear_triple(edge_between(a, b), edge_between(b, c), t);
        CHECK(r.d_o == doctest::Approx(0));
        CHECK(r.d_l == doctest::Approx(1));
        CHECK(r.fr_ij == doctest::Approx(1));
        CHECK(r.fr_jk == doctest::Approx(1));
        CHECK(r.pass);
    }
    SUBCASE("a 20 degree bend fails eta1") {
        const auto a = box(0, {0, 0}, 2, 2), b = box(1, {15, 0}, 2, 2);
        const double rad = 20 * M_PI / 180;
        const auto c = box(2, {15 + 15 * std::cos(rad), 15 * std::sin(rad)}, 2, 2);
        const auto r = linear_triple(edge_between(a, b), edge_between(b, c), t);
        CHECK(r.d_o == doctest::Approx(20));
        CHECK_FALSE(r.pass);
    }
    SUBCASE("spacings 1 m and 10 m clamp to a ratio of 5") {
        const auto a = box(0, {0, 0}, 10, 10), b = box(1, {11, 0}, 10, 10), c = box(2, {31, 0}, 10, 10);
        const auto r = linear_triple(edge_between(a, b), edge_between(b, c), t);
        CHECK(r.d_l == doctest::Approx(5));
        CHECK_FALSE(r.pass);
    }
    SUBCASE("edges without a shared building") {
        const ProximityEdge e1{0, 1, 1, 0, 1}, e2{2, 3, 1, 0, 1}, e3{0, 1, 2, 0, 1};
        CHECK_THROWS_AS(linear_triple(e1, e2, t), Error);
        CHECK_THROWS_AS(linear_triple(e1, e3, t), Error);
        try {
            linear_triple(e1, e2, t);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotAdjacent);
        }
    }
}

TEST_CASE("adjacent edge pairs") {
    const auto pe = [](BuildingId i, BuildingId j) { return ProximityEdge{i, j, 1, 0, 1}; };
    const auto one = enumerate_adjacent_pairs({pe(0, 1), pe(1, 2)});
    REQUIRE(one.size() == 1);
    CHECK(std::tie(one[0].end_a, one[0].middle, one[0].end_b) == std::tuple<BuildingId, BuildingId, BuildingId>{0, 1, 2});

    const auto star = enumerate_adjacent_pairs({pe(0, 1), pe(0, 2), pe(0, 3)});
    std::vector<std::tuple<BuildingId, BuildingId, BuildingId>> got;
    for (const auto& p : star) got.emplace_back(p.end_a, p.middle, p.end_b);
    CHECK(got == std::vector<std::tuple<BuildingId, BuildingId, BuildingId>>{{1, 0, 2}, {1, 0, 3}, {2, 0, 3}});

    // Brute force over edge pairs on a random RNG.
    const auto s = testing::random_scene(30, 30);
    const auto edges = rng_build(s.buildings, {});
    std::set<std::tuple<BuildingId, BuildingId, BuildingId>> want;
    for (std::size_t x = 0; x < edges.size(); ++x) {
        for (std::size_t y = x + 1; y < edges.size(); ++y) {
            const auto& e = edges[x];
            const auto& f = edges[y];
            const std::set<BuildingId> ends{e.i, e.j, f.i, f.j};
            if (ends.size() != 3) continue;
            const BuildingId mid = (e.i == f.i || e.i == f.j) ? e.i : e.j;
            const BuildingId u = e.i == mid ? e.j : e.i;
            const BuildingId v = f.i == mid ? f.j : f.i;
            want.insert({std::min(u, v), mid, std::max(u, v)});
        }
    }
    const auto pairs = enumerate_adjacent_pairs(edges);
    std::set<std::tuple<BuildingId, BuildingId, BuildingId>> have;
    for (const auto& p : pairs) {
        have.insert({p.end_a, p.middle, p.end_b});
        CHECK(p.end_a < p.end_b);
        CHECK((p.first.i == p.end_a || p.first.j == p.end_a));
    }
    CHECK(have.size() == pairs.size());
    CHECK(have == want);
}

TEST_CASE("thresholds validation") {
    Thresholds t;
    CHECK_NOTHROW(t.validate());
    t.delta1 = 0.5;
    CHECK_THROWS_AS(t.validate(), Error);
    t = Thresholds{};
    t.eta3 = 1.5;
    CHECK_THROWS_AS(t.validate(), Error);
    t = Thresholds{};
    t.td = 0;
    CHECK_THROWS_AS(t.validate(), Error);
    CHECK(Thresholds::td_for_scale(10000) == doctest::Approx(2.0));
}

TEST_CASE("predicates are symmetric and agree with recomputation from footprints") {
    const Thresholds t;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto s = testing::random_scene(seed, 60);
        const auto edges = rng_build(s.buildings, {});
        for (const auto& e : edges) {
            const auto& a = s.buildings[e.i];
            const auto& b = s.buildings[e.j];
            const auto ab = similarity(a, b, t), ba = similarity(b, a, t);
            CHECK(ab.pass == ba.pass);
            CHECK(ab.a_r == ba.a_r);
            CHECK(ab.o_r == ba.o_r);
            CHECK(ab.e_r == ba.e_r);
            CHECK(ab.pass == testing::similar_oracle(a, b, t));
        }
        for (const auto& p : enumerate_adjacent_pairs(edges)) {
            const auto fwd = linear_triple(p.first, p.second, t);
            const auto rev = linear_triple(p.second, p.first, t);
            CHECK(fwd.pass == rev.pass);
            CHECK(fwd.d_o == doctest::Approx(rev.d_o));
            CHECK(fwd.d_l == doctest::Approx(rev.d_l));
            CHECK(fwd.pass ==
                  testing::triple_oracle(s.buildings[p.end_a], s.buildings[p.middle], s.buildings[p.end_b], t));
        }
    }
}

TEST_CASE("uniform scaling with td scaled keeps every decision") {
    Thresholds t;
    const auto s = testing::random_scene(5, 50);
    for (double f : {0.5, 3.0}) {
        std::vector<BuildingRecord> scaled;
        for (const auto& b : s.buildings) scaled.push_back(make_building(b.id, geometry::scaled(b.footprint, f)));
        Thresholds ts = t;
        ts.td = t.td * f;
        const auto e0 = rng_build(s.buildings, {});
        const auto e1 = rng_build(scaled, {});
        REQUIRE(e0.size() == e1.size());
        for (std::size_t i = 0; i < e0.size(); ++i) {
            CHECK(e1[i].le == doctest::Approx(e0[i].le * f));
            CHECK(e1[i].e_ori == doctest::Approx(e0[i].e_ori));
            CHECK(e1[i].fr == doctest::Approx(e0[i].fr));
        }
        const auto p0 = enumerate_adjacent_pairs(e0), p1 = enumerate_adjacent_pairs(e1);
        REQUIRE(p0.size() == p1.size());
        for (std::size_t i = 0; i < p0.size(); ++i)
            CHECK(linear_triple(p0[i].first, p0[i].second, t).pass == linear_triple(p1[i].first, p1[i].second, ts).pass);
    }
}

TEST_CASE("tiny td gives the unclamped length ratio") {
    Thresholds t;
    t.td = 1e-12;
    const ProximityEdge a{0, 1, 3.0, 0, 1}, b{1, 2, 7.5, 0, 1};
    CHECK(linear_triple(a, b, t).d_l == doctest::Approx(2.5));
}
