#include "linea/proximity.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

#include "linea/delaunay.hpp"
#include "linea/error.hpp"
#include "linea/kernels.hpp"

namespace linea {

using geometry::BBox;
using geometry::Point;
using geometry::Polygon;
using kernels::IndexPair;

BuildingRecord make_building(BuildingId id, Polygon footprint, double collinear_tol_deg) {
    BuildingRecord b{id, std::move(footprint), 0.0, {}, 0.0, 0, {}};
    b.area = geometry::polygon_area(b.footprint);
    b.sbr = geometry::min_bounding_rect(b.footprint);
    b.b_ori = b.sbr.axis_deg;
    b.edge_cnt = geometry::edge_count(b.footprint, collinear_tol_deg);
    b.centroid = geometry::centroid(b.footprint);
    return b;
}

DistanceMatrix distance_matrix(std::span<const BuildingRecord> buildings) {
    std::vector<Polygon> polys;
    polys.reserve(buildings.size());
    for (const auto& b : buildings) polys.push_back(b.footprint);
    return DistanceMatrix(polys.size(), kernels::distance_matrix_parallel(polys));
}

namespace {

void check_ids(std::span<const BuildingRecord> buildings) {
    std::unordered_set<BuildingId> seen;
    for (const auto& b : buildings) {
        if (!seen.insert(b.id).second) {
            throw Error(ErrorKind::FormatError, "duplicate building id " + std::to_string(b.id));
        }
    }
}

// Delaunay edges of the centroids, widened by every pair closer than twice the
// longer Delaunay edge incident to either endpoint.
std::vector<IndexPair> pruned_candidates(std::span<const BuildingRecord> buildings) {
    const std::size_t n = buildings.size();
    std::vector<Point> centroids;
    centroids.reserve(n);
    for (const auto& b : buildings) centroids.push_back(b.centroid);

    auto pairs = delaunay::edges(centroids);
    std::vector<double> reach(n, 0.0);
    for (const auto& [a, b] : pairs) {
        const double d = geometry::norm(centroids[a] - centroids[b]);
        reach[a] = std::max(reach[a], d);
        reach[b] = std::max(reach[b], d);
    }

    std::vector<BBox> point_boxes;
    point_boxes.reserve(n);
    for (const Point& c : centroids) point_boxes.push_back({c.x, c.y, c.x, c.y});
    const kernels::WitnessIndex grid(std::move(point_boxes));
    for (std::uint32_t i = 0; i < n; ++i) {
        grid.for_each_near(i, 2.0 * reach[i], [&](std::uint32_t j) {
            if (j != i) pairs.emplace_back(std::min(i, j), std::max(i, j));
        });
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace

std::vector<ProximityEdge> rng_build(std::span<const BuildingRecord> buildings,
                                     std::span<const geometry::Polyline> roads, const RngOptions& options) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    check_ids(buildings);
    const std::size_t n = buildings.size();

    auto footprint_dist = [&](std::uint32_t a, std::uint32_t b) {
        return geometry::min_distance(buildings[a].footprint, buildings[b].footprint);
    };
    auto centroid_dist = [&](std::uint32_t a, std::uint32_t b) {
        return geometry::norm(buildings[a].centroid - buildings[b].centroid);
    };

    std::vector<IndexPair> pairs;
    if (options.exact) {
        std::vector<double> m;
        if (options.metric == RngMetric::Footprint) {
            std::vector<Polygon> polys;
            polys.reserve(n);
            for (const auto& b : buildings) polys.push_back(b.footprint);
            m = kernels::distance_matrix_parallel(polys);
        } else {
            m.assign(n * n, 0.0);
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b) m[a * n + b] = centroid_dist(a, b);
        }
        pairs = kernels::rng_pairs_parallel(m, n);
    } else {
        const auto cands = pruned_candidates(buildings);
        std::vector<BBox> boxes;
        boxes.reserve(n);
        for (const auto& b : buildings) {
            boxes.push_back(options.metric == RngMetric::Footprint
                                ? b.footprint.bbox()
                                : BBox{b.centroid.x, b.centroid.y, b.centroid.x, b.centroid.y});
        }
        const kernels::WitnessIndex index(std::move(boxes));
        if (options.metric == RngMetric::Footprint) {
            pairs = kernels::filter_candidates_parallel(index, cands, footprint_dist);
        } else {
            pairs = kernels::filter_candidates_parallel(index, cands, centroid_dist);
        }
    }

    std::vector<ProximityEdge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        const BuildingRecord& ba = buildings[a];
        const BuildingRecord& bb = buildings[b];
        const bool blocked = std::any_of(roads.begin(), roads.end(), [&](const geometry::Polyline& road) {
            return geometry::segment_crosses_polyline(ba.centroid, bb.centroid, road);
        });
        if (blocked) continue;
        ProximityEdge e;
        e.i = std::min(ba.id, bb.id);
        e.j = std::max(ba.id, bb.id);
        e.le = footprint_dist(a, b);
        e.e_ori = geometry::direction_deg(ba.centroid, bb.centroid);
        e.fr = geometry::facing_ratio(ba.sbr, bb.sbr, options.fr_combine);
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end(),
              [](const ProximityEdge& x, const ProximityEdge& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
    return edges;
}

}  // namespace linea
