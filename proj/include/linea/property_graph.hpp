#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "linea/value.hpp"

namespace linea::graph {

using PropertyMap = std::map<std::string, Value, std::less<>>;
using TypeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

struct Node {
    NodeId id = 0;
    std::vector<std::string> labels;  // sorted, unique
    PropertyMap props;

    [[nodiscard]] bool has_label(std::string_view label) const;
    [[nodiscard]] const Value* prop(std::string_view key) const;
};

struct Edge {
    EdgeId id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    TypeId type = 0;
    PropertyMap props;

    [[nodiscard]] const Value* prop(std::string_view key) const;
};

enum class Direction { Out, In, Both };

struct NodeConstraint {
    std::optional<std::string> label;
    std::optional<NodeId> fixed;
    std::vector<std::pair<std::string, Value>> props;
};

struct RelConstraint {
    std::optional<std::string> type;
    Direction dir = Direction::Out;
    int min_hops = 1;
    std::optional<int> max_hops = 1;  // nullopt: unbounded
    std::optional<EdgeId> fixed;

    [[nodiscard]] bool is_varlen() const { return !(min_hops == 1 && max_hops == 1); }
};

// Alternating chain node (rel node)*. nodes.size() == rels.size() + 1.
struct PathPattern {
    std::vector<NodeConstraint> nodes;
    std::vector<RelConstraint> rels;
};

// edges[r] is kNoEdge for variable-length relationships.
struct PathBinding {
    boost::container::small_vector<NodeId, 8> nodes;
    boost::container::small_vector<EdgeId, 8> edges;

    friend bool operator==(const PathBinding&, const PathBinding&) = default;
    friend bool operator<(const PathBinding& a, const PathBinding& b) {
        return std::tie(a.nodes, a.edges) < std::tie(b.nodes, b.edges);
    }
};

// In-memory labelled property multigraph with label/type indexes and per-node
// adjacency lists. Mutations need exclusive access; const member functions may
// run concurrently between mutations.
class Graph {
public:
    NodeId add_node(std::vector<std::string> labels, PropertyMap props);
    EdgeId add_edge(NodeId src, NodeId dst, std::string_view type, PropertyMap props = {});
    // Returns the node with exactly these labels and structurally equal props,
    // creating it when absent.
    NodeId merge_node(std::vector<std::string> labels, PropertyMap props, bool* created = nullptr);
    void set_prop(NodeId id, const std::string& key, Value value);

    [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] const Node& node(NodeId id) const;
    [[nodiscard]] const Edge& edge(EdgeId id) const;
    [[nodiscard]] bool has_node(NodeId id) const { return id < nodes_.size(); }
    [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

    [[nodiscard]] std::optional<TypeId> type_id(std::string_view type) const;
    [[nodiscard]] const std::string& type_name(TypeId id) const { return type_names_[id]; }
    [[nodiscard]] std::span<const NodeId> nodes_by_label(std::string_view label) const;
    [[nodiscard]] std::span<const EdgeId> edges_by_type(std::string_view type) const;
    [[nodiscard]] std::size_t edges_of_type_count(std::string_view type) const { return edges_by_type(type).size(); }

    // Incident edges of `id` as (type, edge) pairs.
    [[nodiscard]] std::span<const std::pair<TypeId, EdgeId>> out_edges(NodeId id) const { return out_[id]; }
    [[nodiscard]] std::span<const std::pair<TypeId, EdgeId>> in_edges(NodeId id) const { return in_[id]; }
    [[nodiscard]] std::vector<NodeId> neighbors(NodeId id, std::string_view type, Direction dir) const;

    // Nodes reachable from start by min..max hops of `type` (walk semantics),
    // sorted by id. max == nullopt means unbounded; an empty type matches any.
    [[nodiscard]] std::vector<NodeId> reach_varlen(NodeId start, std::string_view type, int min_hops,
                                                   std::optional<int> max_hops, Direction dir) const;

    // Enumerates every binding of the pattern, directed as written, with distinct
    // edges within one binding. Enumeration starts from the cheapest indexed
    // element; unconstrained node pairs are never scanned.
    void for_each_match(const PathPattern& pattern, const std::function<void(const PathBinding&)>& fn) const;
    [[nodiscard]] std::vector<PathBinding> match_path(const PathPattern& pattern) const;
    [[nodiscard]] bool node_matches(NodeId id, const NodeConstraint& c) const;

    // Inverted index from list elements of property `key` to the `label` nodes
    // holding them. Built on request; any later node mutation makes it stale.
    void build_list_index(const std::string& label, const std::string& key);
    // nullopt when no fresh index exists for (label, key).
    [[nodiscard]] std::optional<std::span<const NodeId>> list_index_lookup(const std::string& label,
                                                                           const std::string& key,
                                                                           const Value& element) const;

    // Rebuilds every index from the node and edge tables and compares.
    [[nodiscard]] bool verify_indexes() const;

    // One JSON object per line, nodes first, then edges.
    void dump_jsonl(std::ostream& os) const;

private:
    TypeId intern_type(std::string_view type);
    [[nodiscard]] std::size_t merge_key(const std::vector<std::string>& labels, const PropertyMap& props) const;

    struct ListIndex {
        std::uint64_t epoch = 0;
        std::unordered_map<Value, std::vector<NodeId>, ValueHash> postings;
    };

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::string> type_names_;
    std::unordered_map<std::string, TypeId> type_ids_;
    std::unordered_map<std::string, std::vector<NodeId>> label_index_;
    std::vector<std::vector<EdgeId>> type_index_;
    std::vector<std::vector<std::pair<TypeId, EdgeId>>> out_;
    std::vector<std::vector<std::pair<TypeId, EdgeId>>> in_;
    std::unordered_map<std::size_t, std::vector<NodeId>> merge_index_;
    std::uint64_t prop_epoch_ = 1;
    std::map<std::pair<std::string, std::string>, ListIndex> list_indexes_;
};

}  // namespace linea::graph
