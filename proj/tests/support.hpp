#pragma once

// Fixtures and oracles shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "linea/baseline.hpp"
#include "linea/error.hpp"
#include "linea/evaluation.hpp"
#include "linea/geometry.hpp"
#include "linea/pipeline.hpp"
#include "linea/relations.hpp"

namespace linea::testing {

using geometry::Point;

// Uniform doubles from a 64-bit engine; same bits on every platform.
class Rand {
public:
    explicit Rand(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

private:
    std::mt19937_64 eng_;
};

// A row of four squares, then two more bending away by about 20 degrees.
inline std::vector<BuildingRecord> bent_row_buildings() {
    const std::vector<Point> c{{0, 0}, {13, 0}, {26, 0}, {39, 0}, {51.216, 4.446}, {63.43, 8.89}};
    std::vector<BuildingRecord> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(make_building(static_cast<BuildingId>(i), geometry::rectangle(c[i], 10, 10)));
    return out;
}

inline std::vector<BuildingRecord> row_of_squares(int n, double pitch = 15.0, double side = 10.0) {
    std::vector<BuildingRecord> out;
    for (int i = 0; i < n; ++i) out.push_back(make_building(i, geometry::rectangle({i * pitch, 0.0}, side, side)));
    return out;
}

// Star-shaped simple polygon with k vertices around c.
inline geometry::Polygon random_polygon(Rand& r, Point c, double radius) {
    const int k = r.integer(3, 9);
    std::vector<double> angles;
    for (int i = 0; i < k; ++i) angles.push_back(r.uniform(0.0, 2 * M_PI));
    std::sort(angles.begin(), angles.end());
    std::vector<Point> ring;
    for (double a : angles) {
        const double rr = radius * r.uniform(0.5, 1.0);
        ring.push_back({c.x + rr * std::cos(a), c.y + rr * std::sin(a)});
    }
    try {
        geometry::Polygon p(ring);
        (void)geometry::edge_count(p);  // rejects rings that collapse when simplified
        return p;
    } catch (const Error&) {
        return geometry::rectangle(c, radius, radius * 0.7, r.uniform(0, 180));
    }
}

// A mixed scene: a few jittered rows of rectangles plus scattered random
// polygons, all disjoint, with n buildings in total and optional roads.
struct Scene {
    std::vector<BuildingRecord> buildings;
    std::vector<geometry::Polyline> roads;
};

inline Scene random_scene(std::uint64_t seed, int n, bool with_roads = false) {
    Rand r(seed);
    Scene s;
    std::vector<geometry::Polygon> polys;
    auto fits = [&](const geometry::Polygon& p) {
        for (const auto& q : polys)
            if (geometry::min_distance(p, q) < 0.5) return false;
        return true;
    };
    const double extent = 30.0 * std::sqrt(static_cast<double>(n)) + 60.0;
    while (static_cast<int>(polys.size()) < n) {
        if (r.coin(0.6)) {
            // A row segment.
            const int len = std::min(r.integer(3, 8), n - static_cast<int>(polys.size()));
            const Point start{r.uniform(0, extent), r.uniform(0, extent)};
            const double dir = r.uniform(0, 180);
            const double pitch = r.uniform(12, 20);
            const double w = r.uniform(6, 9);
            const double bend = r.coin(0.3) ? r.uniform(-25, 25) : 0.0;
            double a = dir;
            Point p = start;
            for (int i = 0; i < len; ++i) {
                const Point jit{r.uniform(-1, 1), r.uniform(-1, 1)};
                auto poly = geometry::rectangle(p + jit, w, w * r.uniform(0.8, 1.3), dir + r.uniform(-8, 8));
                if (fits(poly)) polys.push_back(poly);
                if (i == len / 2) a += bend;
                p = p + pitch * Point{std::cos(a * M_PI / 180), std::sin(a * M_PI / 180)};
            }
        } else {
            auto poly = random_polygon(r, {r.uniform(0, extent), r.uniform(0, extent)}, r.uniform(3, 10));
            if (fits(poly)) polys.push_back(poly);
        }
    }
    for (std::size_t i = 0; i < polys.size(); ++i) s.buildings.push_back(make_building(static_cast<BuildingId>(i), polys[i]));
    if (with_roads) {
        const int k = r.integer(1, 3);
        for (int i = 0; i < k; ++i) {
            s.roads.push_back({{{r.uniform(-10, extent), -10}, {r.uniform(-10, extent), extent + 10}}});
        }
    }
    return s;
}

// Distance by brute force over every segment pair, plus containment.
inline double min_distance_oracle(const geometry::Polygon& p, const geometry::Polygon& q) {
    using namespace geometry;
    double best = INFINITY;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
            const Point a = p[i], b = p[(i + 1) % p.size()], c = q[j], d = q[(j + 1) % q.size()];
            if (segments_intersect(a, b, c, d)) return 0.0;
            best = std::min({best, point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                             point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
        }
    }
    if (point_in_polygon(p[0], q) || point_in_polygon(q[0], p)) return 0.0;
    return best;
}

// Similarity straight from the footprints.
inline bool similar_oracle(const BuildingRecord& a, const BuildingRecord& b, const Thresholds& t) {
    const double aa = geometry::polygon_area(a.footprint), ab = geometry::polygon_area(b.footprint);
    const double oa = geometry::min_bounding_rect(a.footprint).axis_deg, ob = geometry::min_bounding_rect(b.footprint).axis_deg;
    const double ea = geometry::edge_count(a.footprint), eb = geometry::edge_count(b.footprint);
    return std::max(aa, ab) / std::min(aa, ab) <= t.delta1 && geometry::angle_diff_180(oa, ob) <= t.delta2 &&
           std::max(ea, eb) / std::min(ea, eb) <= t.delta3;
}

// Linear triple straight from the footprints, with exact distances.
inline bool triple_oracle(const BuildingRecord& i, const BuildingRecord& j, const BuildingRecord& k, const Thresholds& t) {
    const double dij = geometry::direction_deg(geometry::centroid(i.footprint), geometry::centroid(j.footprint));
    const double djk = geometry::direction_deg(geometry::centroid(j.footprint), geometry::centroid(k.footprint));
    const double lij = std::max(min_distance_oracle(i.footprint, j.footprint), t.td);
    const double ljk = std::max(min_distance_oracle(j.footprint, k.footprint), t.td);
    const auto ri = geometry::min_bounding_rect(i.footprint), rj = geometry::min_bounding_rect(j.footprint),
               rk = geometry::min_bounding_rect(k.footprint);
    return geometry::angle_diff_180(dij, djk) <= t.eta1 && std::max(lij, ljk) / std::min(lij, ljk) <= t.eta2 &&
           geometry::facing_ratio(ri, rj) >= t.eta3 && geometry::facing_ratio(rj, rk) >= t.eta3;
}

// Relative neighbourhood graph by definition: O(n^3) over exact footprint
// distances, with the road test applied to the centroid segment.
inline std::set<std::pair<BuildingId, BuildingId>> rng_oracle(std::span<const BuildingRecord> b,
                                                              std::span<const geometry::Polyline> roads) {
    const std::size_t n = b.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = geometry::min_distance(b[i].footprint, b[j].footprint);
    std::set<std::pair<BuildingId, BuildingId>> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool keep = true;
            for (std::size_t k = 0; k < n && keep; ++k) {
                if (k == i || k == j) continue;
                if (std::max(d[i * n + k], d[j * n + k]) < d[i * n + j]) keep = false;
            }
            for (const auto& road : roads)
                if (keep && geometry::segment_crosses_polyline(b[i].centroid, b[j].centroid, road)) keep = false;
            if (keep) out.insert({std::min(b[i].id, b[j].id), std::max(b[i].id, b[j].id)});
        }
    }
    return out;
}

inline std::set<std::vector<BuildingId>> as_sets(const std::vector<LinearPattern>& ps) {
    std::set<std::vector<BuildingId>> out;
    for (const auto& p : ps) {
        auto ids = p.building_ids;
        std::sort(ids.begin(), ids.end());
        out.insert(ids);
    }
    return out;
}

// The five recognition routes on one dataset, as building-id sets.
struct RouteResults {
    std::set<std::vector<BuildingId>> baseline, a_direct, a_engine, b_direct, b_engine;
    [[nodiscard]] bool all_equal() const {
        return baseline == a_direct && baseline == a_engine && baseline == b_direct && baseline == b_engine;
    }
};

inline RouteResults run_routes(std::span<const BuildingRecord> b, std::span<const geometry::Polyline> roads,
                               const Thresholds& t = {}) {
    RouteResults r;
    const auto edges = rng_build(b, roads);
    r.baseline = as_sets(baseline_recognize(baseline_model(b, edges), b, t));
    auto ga = build_kg_precomputed(b, edges, t);
    r.a_direct = as_sets(recognize_linear_patterns(ga, b, t, Mode::Direct));
    ga = build_kg_precomputed(b, edges, t);
    r.a_engine = as_sets(recognize_linear_patterns(ga, b, t, Mode::Engine));
    auto gb = build_kg_attributes(b, edges);
    r.b_direct = as_sets(recognize_linear_patterns(gb, b, t, Mode::Direct));
    gb = build_kg_attributes(b, edges);
    r.b_engine = as_sets(recognize_linear_patterns(gb, b, t, Mode::Engine));
    return r;
}

}  // namespace linea::testing
