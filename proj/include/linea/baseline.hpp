#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linea/pipeline.hpp"

namespace linea {

// Proximity graph as a plain adjacency list with string-keyed attribute maps
// on vertices and edges, and no indexes of any kind.
struct BaselineModel {
    struct Arc {
        std::size_t to = 0;
        std::map<std::string, double> attrs;  // le, e_ori, fr
    };
    struct Vertex {
        BuildingId id = 0;
        std::map<std::string, double> attrs;  // area, b_ori, edge_cnt
        std::vector<Arc> arcs;
    };
    std::vector<Vertex> vertices;
};

BaselineModel baseline_model(std::span<const BuildingRecord> buildings, const std::vector<ProximityEdge>& edges);

// Nested traversal: every vertex, every neighbour pair, predicates tested on
// each visit; then every pair of triples compared for merging.
std::vector<LinearPattern> baseline_recognize(const BaselineModel& model, std::span<const BuildingRecord> buildings,
                                              const Thresholds& t, AlignRule align = AlignRule::Listing);

// Builds the proximity graph first. Throws EmptyDataset.
std::vector<LinearPattern> baseline_recognize(std::span<const BuildingRecord> buildings,
                                              std::span<const geometry::Polyline> roads, const Thresholds& t,
                                              const RngOptions& rng = {}, AlignRule align = AlignRule::Listing);

}  // namespace linea
