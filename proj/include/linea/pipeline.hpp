#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linea/cypher/ast.hpp"
#include "linea/property_graph.hpp"
#include "linea/proximity.hpp"
#include "linea/relations.hpp"

namespace linea {

enum class Schema { A, B };  // A: precomputed relations + pIDList; B: raw attributes
enum class Mode { Engine, Direct };
enum class AlignRule { Listing, OuterEdges };

struct TriplePattern {
    std::int64_t p_id = 0;
    std::array<BuildingId, 3> b_ids{};  // end, middle, end; ends ascending
    std::array<double, 2> oris{};       // directions of (b0,b1) and (b1,b2)

    friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct LinearPattern {
    std::vector<BuildingId> building_ids;  // chain order
    std::vector<std::int64_t> source_triples;

    friend bool operator==(const LinearPattern&, const LinearPattern&) = default;
};

struct RecognizeOptions {
    AlignRule align = AlignRule::Listing;
    // Engine mode only: replaces the shipped scripts (placeholders allowed).
    std::optional<std::string> recognize_script;
    std::optional<std::string> derive_script;
    // Engine mode only: run the recognition rules exactly as originally listed.
    bool listing_rules = false;
    bool symmetric_create = false;
    bool use_list_index = true;
};

// Every collinear triple (similar, RNG-adjacent, passing the arrangement
// thresholds), in (end, middle, end) order with p_id = position.
std::vector<TriplePattern> passing_triples(std::span<const BuildingRecord> buildings,
                                           const std::vector<ProximityEdge>& edges, const Thresholds& t);

// Building {ID, pIDList}; HAS_Proxi {EOri}; HAS_Sim. Edges point from the
// lower to the higher building id.
graph::Graph build_kg_precomputed(std::span<const BuildingRecord> buildings, std::span<const geometry::Polyline> roads,
                                  const Thresholds& t, const RngOptions& rng = {});
// Same graph from an already computed proximity edge list.
graph::Graph build_kg_precomputed(std::span<const BuildingRecord> buildings, const std::vector<ProximityEdge>& edges,
                                  const Thresholds& t);

// Building {ID, Area, BOri, EdgeCount}; HAS_Proxi {EOri, Length, FR}.
graph::Graph build_kg_attributes(std::span<const BuildingRecord> buildings, std::span<const geometry::Polyline> roads,
                                 const RngOptions& rng = {});
graph::Graph build_kg_attributes(std::span<const BuildingRecord> buildings, const std::vector<ProximityEdge>& edges);

// Recognizes linear patterns on a graph from either builder (the schema is
// detected from the node properties). Engine mode runs the rule scripts and
// mutates g. Patterns are ordered along their principal direction and sorted.
std::vector<LinearPattern> recognize_linear_patterns(graph::Graph& g, std::span<const BuildingRecord> buildings,
                                                     const Thresholds& t, Mode mode,
                                                     const RecognizeOptions& options = {});

// Triples found by the last step of recognition, for inspection.
struct RecognitionTrace {
    std::vector<TriplePattern> triples;
    // Index pairs into triples. Direct mode: every aligned pair; engine mode:
    // a spanning forest of the returned closure.
    std::vector<std::pair<std::size_t, std::size_t>> aligned;
};
std::vector<LinearPattern> recognize_linear_patterns(graph::Graph& g, std::span<const BuildingRecord> buildings,
                                                     const Thresholds& t, Mode mode, const RecognizeOptions& options,
                                                     RecognitionTrace* trace);

// Sorts ids by the projection of their centroids onto the least-squares line
// through them; reversed when the last id is smaller than the first.
std::vector<BuildingId> order_pattern(std::vector<BuildingId> ids, std::span<const BuildingRecord> buildings);

// Schema detection used by recognize_linear_patterns.
Schema detect_schema(const graph::Graph& g);

// Parsed and instantiated shipped scripts, cached per threshold set.
const cypher::Script& recognition_script(const Thresholds& t, bool listing = false);
const cypher::Script& derivation_script(const Thresholds& t);

// Do the direction pairs of two triples satisfy the alignment rule?
bool aligned(const TriplePattern& a, const TriplePattern& b, const Thresholds& t, AlignRule rule);

// Connected components of the alignment relation, as patterns.
std::vector<LinearPattern> merge_triples(const std::vector<TriplePattern>& triples,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& links,
                                         std::span<const BuildingRecord> buildings);

}  // namespace linea
