#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linea/geometry.hpp"

namespace linea {

using BuildingId = std::int64_t;

struct BuildingRecord {
    BuildingId id = 0;
    geometry::Polygon footprint;
    double area = 0.0;
    geometry::OrientedRect sbr;
    double b_ori = 0.0;  // SBR long axis, [0,180)
    int edge_cnt = 0;
    geometry::Point centroid;
};

// Derives every cached attribute from the footprint.
BuildingRecord make_building(BuildingId id, geometry::Polygon footprint, double collinear_tol_deg = 1.0);

// An RNG edge between buildings i < j (by id).
struct ProximityEdge {
    BuildingId i = 0;
    BuildingId j = 0;
    double le = 0.0;     // footprint shortest distance
    double e_ori = 0.0;  // centroid-to-centroid direction, [0,180)
    double fr = 0.0;     // facing ratio of the two SBRs

    friend bool operator==(const ProximityEdge&, const ProximityEdge&) = default;
};

enum class RngMetric { Footprint, Centroid };

struct RngOptions {
    bool exact = false;
    RngMetric metric = RngMetric::Footprint;
    geometry::FrCombine fr_combine = geometry::FrCombine::Max;
};

// Row-major symmetric matrix of pairwise footprint distances.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    [[nodiscard]] std::span<const double> data() const { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

DistanceMatrix distance_matrix(std::span<const BuildingRecord> buildings);

// Road-constrained relative neighbourhood graph. Edges are sorted by (i, j).
std::vector<ProximityEdge> rng_build(std::span<const BuildingRecord> buildings,
                                     std::span<const geometry::Polyline> roads, const RngOptions& options = {});

}  // namespace linea
