#pragma once

#include <utility>
#include <vector>

#include "linea/proximity.hpp"

namespace linea {

// Similarity (area, orientation, edge count) and linear-arrangement thresholds.
struct Thresholds {
    double delta1 = 2.0;   // area ratio
    double delta2 = 20.0;  // orientation difference, degrees
    double delta3 = 1.5;   // edge-count ratio
    double eta1 = 15.0;    // direction difference of adjacent edges, degrees
    double eta2 = 2.0;     // length ratio of adjacent edges
    double eta3 = 0.3;     // minimum facing ratio
    double td = 2.0;       // length clamp, meters

    // 0.2 mm of legibility on paper at the given scale denominator.
    static double td_for_scale(double scale_denominator) { return 0.0002 * scale_denominator; }

    // Throws InvalidConfig when an invariant is violated.
    void validate() const;
};

struct SimilarityResult {
    double a_r = 1.0;
    double o_r = 0.0;
    double e_r = 1.0;
    bool pass = false;
};

struct StrResult {
    double d_o = 0.0;
    double d_l = 1.0;
    double fr_ij = 0.0;
    double fr_jk = 0.0;
    bool pass = false;
};

// The building attributes similarity depends on.
struct ShapeAttrs {
    double area = 0.0;
    double b_ori = 0.0;
    int edge_cnt = 0;
};

inline ShapeAttrs shape_attrs(const BuildingRecord& b) { return {b.area, b.b_ori, b.edge_cnt}; }

SimilarityResult similarity(const ShapeAttrs& bi, const ShapeAttrs& bj, const Thresholds& t);
inline SimilarityResult similarity(const BuildingRecord& bi, const BuildingRecord& bj, const Thresholds& t) {
    return similarity(shape_attrs(bi), shape_attrs(bj), t);
}

inline double clamp_length(double le, double td) { return le > td ? le : td; }

// Edges must share exactly one building; throws NotAdjacent otherwise.
StrResult linear_triple(const ProximityEdge& e_ij, const ProximityEdge& e_jk, const Thresholds& t);

// Two RNG edges meeting at `middle`. `first` touches the lower-id end building.
struct AdjacentPair {
    ProximityEdge first;
    ProximityEdge second;
    BuildingId end_a = 0;  // lower id
    BuildingId middle = 0;
    BuildingId end_b = 0;
};

// Every unordered pair of edges sharing exactly one building, sorted by
// (end_a, middle, end_b).
std::vector<AdjacentPair> enumerate_adjacent_pairs(const std::vector<ProximityEdge>& edges);

}  // namespace linea
