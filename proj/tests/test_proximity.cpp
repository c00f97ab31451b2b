#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "linea/delaunay.hpp"
#include "linea/error.hpp"
#include "linea/kernels.hpp"
#include "linea/proximity.hpp"
#include "support.hpp"

using namespace linea;
using geometry::Point;
using EdgeSet = std::set<std::pair<BuildingId, BuildingId>>;

namespace {

std::vector<BuildingRecord> squares_at(const std::vector<Point>& centers, double side = 0.01) {
    std::vector<BuildingRecord> out;
    for (std::size_t i = 0; i < centers.size(); ++i)
        out.push_back(make_building(static_cast<BuildingId>(i), geometry::rectangle(centers[i], side, side)));
    return out;
}

EdgeSet edge_set(const std::vector<ProximityEdge>& edges) {
    EdgeSet out;
    for (const auto& e : edges) out.insert({e.i, e.j});
    return out;
}

// Kruskal over the full distance matrix.
EdgeSet mst(std::span<const BuildingRecord> b, const DistanceMatrix& d) {
    const std::size_t n = b.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(d(i, j), i, j);
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    EdgeSet out;
    for (const auto& [w, i, j] : all) {
        const auto ri = find(i), rj = find(j);
        if (ri == rj) continue;
        parent[ri] = rj;
        out.insert({b[i].id, b[j].id});
    }
    return out;
}

}  // namespace

TEST_CASE("building record caches") {
    const auto b = make_building(7, geometry::rectangle({5, 5}, 4, 2, 30));
    CHECK(b.id == 7);
    CHECK(b.area == doctest::Approx(8));
    CHECK(b.b_ori == doctest::Approx(30));
    CHECK(b.edge_cnt == 4);
    CHECK(b.centroid.x == doctest::Approx(5));
    CHECK(b.centroid.y == doctest::Approx(5));
}

TEST_CASE("RNG: definitional examples") {
    SUBCASE("three collinear") {
        const auto b = squares_at({{0, 0}, {1, 0}, {2, 0}});
        CHECK(edge_set(rng_build(b, {})) == EdgeSet{{0, 1}, {1, 2}});
    }
    SUBCASE("equal pairwise gaps keep all three") {
        // Every gap is exactly 2 m, so no pair has a strictly closer witness.
        const std::vector<BuildingRecord> b{make_building(0, geometry::Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})),
                                            make_building(1, geometry::Polygon({{3, 0}, {4, 0}, {4, 1}, {3, 1}})),
                                            make_building(2, geometry::Polygon({{0, 3}, {4, 3}, {4, 4}, {0, 4}}))};
        CHECK(edge_set(rng_build(b, {})) == EdgeSet{{0, 1}, {0, 2}, {1, 2}});
    }
    SUBCASE("square corners give the four sides") {
        const auto b = squares_at({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        CHECK(edge_set(rng_build(b, {})) == EdgeSet{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    }
    SUBCASE("a road between two buildings removes their edge") {
        const auto b = squares_at({{0, 0}, {10, 0}}, 2.0);
        CHECK(rng_build(b, {}).size() == 1);
        const std::vector<geometry::Polyline> roads{{{{5, -10}, {5, 10}}}};
        CHECK(rng_build(b, roads).empty());
    }
    SUBCASE("empty input") {
        CHECK_THROWS_AS(rng_build(std::vector<BuildingRecord>{}, {}), Error);
    }
}

TEST_CASE("RNG edge attributes") {
    const auto b = squares_at({{0, 0}, {10, 10}}, 2.0);
    const auto e = rng_build(b, {});
    REQUIRE(e.size() == 1);
    CHECK(e[0].i == 0);
    CHECK(e[0].j == 1);
    CHECK(e[0].le == doctest::Approx(8 * std::sqrt(2.0)));
    CHECK(e[0].e_ori == doctest::Approx(45));
    CHECK(e[0].fr == doctest::Approx(0.0));
}

TEST_CASE("distance matrix") {
    const auto one = squares_at({{0, 0}}, 1.0);
    const auto m1 = distance_matrix(one);
    CHECK(m1.size() == 1);
    CHECK(m1(0, 0) == 0.0);
    const auto two = squares_at({{0.5, 0.5}, {4.5, 0.5}}, 1.0);
    CHECK(distance_matrix(two)(0, 1) == doctest::Approx(3.0));

    const auto s = testing::random_scene(3, 10);
    const auto m = distance_matrix(s.buildings);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(m(i, i) == 0.0);
        for (std::size_t j = 0; j < 10; ++j) {
            CHECK(std::abs(m(i, j) - m(j, i)) <= 1e-12);
            if (i != j) CHECK(m(i, j) == geometry::min_distance(s.buildings[i].footprint, s.buildings[j].footprint));
        }
    }
}

TEST_CASE("RNG matches the definition, pruned or exact, with and without roads") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const int n = 5 + static_cast<int>(seed * 37 % 196);
        const auto s = testing::random_scene(seed, n, seed % 3 == 0);
        const auto oracle = testing::rng_oracle(s.buildings, s.roads);
        const auto pruned = rng_build(s.buildings, s.roads);
        RngOptions exact;
        exact.exact = true;
        CHECK(edge_set(pruned) == oracle);
        CHECK(edge_set(rng_build(s.buildings, s.roads, exact)) == oracle);
        CHECK(std::is_sorted(pruned.begin(), pruned.end(),
                             [](const auto& a, const auto& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); }));
    }
}

TEST_CASE("RNG contains the MST and, for point-like footprints, lies in the Delaunay triangulation") {
    testing::Rand r(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = r.integer(4, 60);
        std::vector<Point> c;
        for (int i = 0; i < n; ++i) c.push_back({r.uniform(0, 1000), r.uniform(0, 1000)});
        const auto b = squares_at(c, 0.001);
        const auto rng = edge_set(rng_build(b, {}));
        for (const auto& e : mst(b, distance_matrix(b))) CHECK(rng.count(e) == 1);
        EdgeSet del;
        for (const auto& [i, j] : delaunay::edges(c)) del.insert({std::min<BuildingId>(i, j), std::max<BuildingId>(i, j)});
        for (const auto& e : rng) CHECK(del.count(e) == 1);
    }
}

TEST_CASE("removing a building only adds edges it was a witness against") {
    const auto s = testing::random_scene(77, 40);
    const auto full = edge_set(rng_build(s.buildings, {}));
    const auto d = distance_matrix(s.buildings);
    for (std::size_t drop : {0u, 7u, 19u, 33u}) {
        std::vector<BuildingRecord> rest;
        for (std::size_t i = 0; i < s.buildings.size(); ++i)
            if (i != drop) rest.push_back(s.buildings[i]);
        for (const auto& [i, j] : edge_set(rng_build(rest, {}))) {
            if (full.count({i, j})) continue;
            const auto k = drop;
            CHECK(std::max(d(i, k), d(j, k)) < d(i, j));
        }
    }
}

TEST_CASE("parallel kernels agree with their serial references") {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
        const auto s = testing::random_scene(seed, 120);
        std::vector<geometry::Polygon> polys;
        for (const auto& b : s.buildings) polys.push_back(b.footprint);
        const auto ms = kernels::distance_matrix_serial(polys);
        const auto mp = kernels::distance_matrix_parallel(polys);
        CHECK(ms == mp);
        CHECK(kernels::rng_pairs_serial(ms, polys.size()) == kernels::rng_pairs_parallel(ms, polys.size()));

        std::vector<geometry::BBox> boxes;
        for (const auto& p : polys) boxes.push_back(p.bbox());
        const kernels::WitnessIndex index(boxes);
        std::vector<kernels::IndexPair> cands;
        for (std::uint32_t i = 0; i < polys.size(); ++i)
            for (std::uint32_t j = i + 1; j < polys.size(); ++j) cands.emplace_back(i, j);
        auto dist = [&](std::uint32_t i, std::uint32_t j) { return ms[i * polys.size() + j]; };
        const auto fs = kernels::filter_candidates_serial(index, cands, dist);
        CHECK(fs == kernels::filter_candidates_parallel(index, cands, dist));
        CHECK(fs == kernels::rng_pairs_serial(ms, polys.size()));
    }
}
