#include "linea/property_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "linea/error.hpp"

namespace linea::graph {

namespace {

std::vector<std::string> normalize_labels(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

const Value* find_prop(const PropertyMap& props, std::string_view key) {
    // Few properties per node: scan, rejecting on length first.
    if (props.size() <= 8) {
        for (const auto& [k, v] : props)
            if (k.size() == key.size() && std::string_view(k) == key) return &v;
        return nullptr;
    }
    const auto it = props.find(key);
    return it == props.end() ? nullptr : &it->second;
}

}  // namespace

bool Node::has_label(std::string_view label) const {
    return std::binary_search(labels.begin(), labels.end(), label, std::less<>{});
}

const Value* Node::prop(std::string_view key) const { return find_prop(props, key); }
const Value* Edge::prop(std::string_view key) const { return find_prop(props, key); }

std::size_t Graph::merge_key(const std::vector<std::string>& labels, const PropertyMap& props) const {
    std::size_t h = labels.size();
    for (const auto& l : labels) h = h * 1000003u ^ std::hash<std::string>{}(l);
    for (const auto& [k, v] : props) {
        h = h * 1000003u ^ std::hash<std::string>{}(k);
        h = h * 1000003u ^ hash_value(v);
    }
    return h;
}

NodeId Graph::add_node(std::vector<std::string> labels, PropertyMap props) {
    const auto id = static_cast<NodeId>(nodes_.size());
    Node n{id, normalize_labels(std::move(labels)), std::move(props)};
    for (const auto& l : n.labels) label_index_[l].push_back(id);
    merge_index_[merge_key(n.labels, n.props)].push_back(id);
    nodes_.push_back(std::move(n));
    out_.emplace_back();
    in_.emplace_back();
    ++prop_epoch_;
    return id;
}

TypeId Graph::intern_type(std::string_view type) {
    const auto it = type_ids_.find(std::string(type));
    if (it != type_ids_.end()) return it->second;
    const auto id = static_cast<TypeId>(type_names_.size());
    type_names_.emplace_back(type);
    type_ids_.emplace(std::string(type), id);
    type_index_.emplace_back();
    return id;
}

EdgeId Graph::add_edge(NodeId src, NodeId dst, std::string_view type, PropertyMap props) {
    if (!has_node(src) || !has_node(dst)) {
        throw Error(ErrorKind::UnknownNode, "edge endpoint does not exist");
    }
    const TypeId t = intern_type(type);
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{id, src, dst, t, std::move(props)});
    type_index_[t].push_back(id);
    out_[src].emplace_back(t, id);
    in_[dst].emplace_back(t, id);
    return id;
}

NodeId Graph::merge_node(std::vector<std::string> labels, PropertyMap props, bool* created) {
    labels = normalize_labels(std::move(labels));
    const auto it = merge_index_.find(merge_key(labels, props));
    if (it != merge_index_.end()) {
        for (NodeId id : it->second) {
            if (nodes_[id].labels == labels && nodes_[id].props == props) {
                if (created) *created = false;
                return id;
            }
        }
    }
    if (created) *created = true;
    return add_node(std::move(labels), std::move(props));
}

void Graph::set_prop(NodeId id, const std::string& key, Value value) {
    if (!has_node(id)) throw Error(ErrorKind::UnknownNode, "no such node");
    Node& n = nodes_[id];
    auto& bucket = merge_index_[merge_key(n.labels, n.props)];
    bucket.erase(std::remove(bucket.begin(), bucket.end(), id), bucket.end());
    n.props[key] = std::move(value);
    merge_index_[merge_key(n.labels, n.props)].push_back(id);
    ++prop_epoch_;
}

const Node& Graph::node(NodeId id) const {
    if (!has_node(id)) throw Error(ErrorKind::UnknownNode, "no such node");
    return nodes_[id];
}

const Edge& Graph::edge(EdgeId id) const {
    if (id >= edges_.size()) throw Error(ErrorKind::UnknownNode, "no such edge");
    return edges_[id];
}

std::optional<TypeId> Graph::type_id(std::string_view type) const {
    const auto it = type_ids_.find(std::string(type));
    if (it == type_ids_.end()) return std::nullopt;
    return it->second;
}

std::span<const NodeId> Graph::nodes_by_label(std::string_view label) const {
    const auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return {};
    return it->second;
}

std::span<const EdgeId> Graph::edges_by_type(std::string_view type) const {
    const auto t = type_id(type);
    if (!t) return {};
    return type_index_[*t];
}

std::vector<NodeId> Graph::neighbors(NodeId id, std::string_view type, Direction dir) const {
    if (!has_node(id)) throw Error(ErrorKind::UnknownNode, "no such node");
    std::vector<NodeId> out;
    const auto t = type_id(type);
    if (!t) return out;
    if (dir != Direction::In) {
        for (const auto& [et, e] : out_[id])
            if (et == *t) out.push_back(edges_[e].dst);
    }
    if (dir != Direction::Out) {
        for (const auto& [et, e] : in_[id])
            if (et == *t) out.push_back(edges_[e].src);
    }
    return out;
}

std::vector<NodeId> Graph::reach_varlen(NodeId start, std::string_view type, int min_hops,
                                        std::optional<int> max_hops, Direction dir) const {
    if (!has_node(start)) throw Error(ErrorKind::UnknownNode, "no such node");
    // An empty type name accepts every relationship type.
    const bool any = type.empty();
    const auto t = type_id(type);
    auto step = [&](const std::vector<NodeId>& frontier) {
        std::set<NodeId> next;
        if (!any && !t) return std::vector<NodeId>{};
        for (NodeId n : frontier) {
            if (dir != Direction::In)
                for (const auto& [et, e] : out_[n])
                    if (any || et == *t) next.insert(edges_[e].dst);
            if (dir != Direction::Out)
                for (const auto& [et, e] : in_[n])
                    if (any || et == *t) next.insert(edges_[e].src);
        }
        return std::vector<NodeId>(next.begin(), next.end());
    };

    // Frontier of nodes reachable in exactly `level` hops, for level up to min.
    std::vector<NodeId> frontier{start};
    for (int level = 0; level < min_hops && !frontier.empty(); ++level) frontier = step(frontier);

    if (max_hops) {
        std::set<NodeId> result(frontier.begin(), frontier.end());
        std::set<std::vector<NodeId>> seen{frontier};
        for (int level = min_hops; level < *max_hops && !frontier.empty(); ++level) {
            frontier = step(frontier);
            // Layers are a function of the previous layer, so a repeat means a cycle.
            if (!seen.insert(frontier).second) break;
            result.insert(frontier.begin(), frontier.end());
        }
        return {result.begin(), result.end()};
    }
    // Unbounded: plain breadth-first search from the min_hops layer.
    // Epoch stamps avoid clearing a visited array on every call.
    thread_local std::vector<std::uint32_t> stamp;
    thread_local std::uint32_t epoch = 0;
    if (stamp.size() < nodes_.size()) stamp.resize(nodes_.size(), 0);
    if (++epoch == 0) {
        std::fill(stamp.begin(), stamp.end(), 0);
        epoch = 1;
    }
    auto seen = [&](NodeId m) { return stamp[m] == epoch; };
    std::vector<NodeId> out(frontier.begin(), frontier.end());
    for (NodeId n : out) stamp[n] = epoch;
    if (!any && !t) return out;
    for (std::size_t head = 0; head < out.size(); ++head) {
        const NodeId n = out[head];
        auto visit = [&](NodeId m) {
            if (!seen(m)) {
                stamp[m] = epoch;
                out.push_back(m);
            }
        };
        if (dir != Direction::In)
            for (const auto& [et, e] : out_[n])
                if (any || et == *t) visit(edges_[e].dst);
        if (dir != Direction::Out)
            for (const auto& [et, e] : in_[n])
                if (any || et == *t) visit(edges_[e].src);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::node_matches(NodeId id, const NodeConstraint& c) const {
    if (c.fixed && *c.fixed != id) return false;
    const Node& n = nodes_[id];
    if (c.label && !n.has_label(*c.label)) return false;
    for (const auto& [k, v] : c.props) {
        const Value* p = n.prop(k);
        if (!p || !(*p == v)) return false;
    }
    return true;
}

namespace {

using TypeList = boost::container::small_vector<std::optional<TypeId>, 8>;

constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

// Depth-first extension of a partial binding outward from the anchor.
class Matcher {
public:
    Matcher(const Graph& g, const PathPattern& p, const std::function<void(const PathBinding&)>& fn,
            TypeList types)
        : g_(g), p_(p), fn_(fn), types_(std::move(types)) {
        b_.nodes.assign(p.nodes.size(), 0);
        b_.edges.assign(p.rels.size(), kNoEdge);
    }

    void run_from_node(std::size_t pos, NodeId n) {
        if (!node_ok(n, pos)) return;
        b_.nodes[pos] = n;
        lo_ = pos;
        extend_right(pos);
    }

    void run_from_edge(std::size_t r, EdgeId e) {
        const Edge& edge = g_.edge(e);
        const RelConstraint& rc = p_.rels[r];
        auto attempt = [&](NodeId left, NodeId right) {
            if (!node_ok(left, r) || !node_ok(right, r + 1)) return;
            b_.nodes[r] = left;
            b_.nodes[r + 1] = right;
            b_.edges[r] = e;
            lo_ = r;
            extend_right(r + 1);
            b_.edges[r] = kNoEdge;
        };
        if (rc.dir != Direction::In) attempt(edge.src, edge.dst);
        if (rc.dir != Direction::Out && !(rc.dir == Direction::Both && edge.src == edge.dst)) attempt(edge.dst, edge.src);
    }

private:
    bool edge_used(EdgeId e) const { return std::find(b_.edges.begin(), b_.edges.end(), e) != b_.edges.end(); }

    // Visits (edge, far node) pairs leaving `from` along rel r; `forward` is
    // true when walking left-to-right as written.
    template <class Fn>
    void walk(std::size_t r, NodeId from, bool forward, Fn&& fn) {
        const RelConstraint& rc = p_.rels[r];
        const auto t = types_[r];
        if (rc.type && !t) return;
        Direction d = rc.dir;
        if (!forward && d != Direction::Both) d = d == Direction::Out ? Direction::In : Direction::Out;
        if (d != Direction::In) {
            for (const auto& [et, e] : g_.out_edges(from)) {
                if (t && et != *t) continue;
                if (rc.fixed && *rc.fixed != e) continue;
                fn(e, g_.edge(e).dst);
            }
        }
        if (d != Direction::Out) {
            for (const auto& [et, e] : g_.in_edges(from)) {
                if (t && et != *t) continue;
                if (rc.fixed && *rc.fixed != e) continue;
                const Edge& edge = g_.edge(e);
                if (d == Direction::Both && edge.src == edge.dst) continue;
                fn(e, edge.src);
            }
        }
    }

    template <class Fn>
    void step(std::size_t r, NodeId from, bool forward, std::size_t target_pos, Fn&& next) {
        const RelConstraint& rc = p_.rels[r];
        if (rc.is_varlen()) {
            Direction d = rc.dir;
            if (!forward && d != Direction::Both) d = d == Direction::Out ? Direction::In : Direction::Out;
            const std::vector<NodeId> ends =
                g_.reach_varlen(from, rc.type.value_or(""), rc.min_hops, rc.max_hops, d);
            for (NodeId n : ends) {
                if (!node_ok(n, target_pos)) continue;
                b_.nodes[target_pos] = n;
                b_.edges[r] = kNoEdge;
                next();
            }
            return;
        }
        walk(r, from, forward, [&](EdgeId e, NodeId n) {
            if (edge_used(e) || !node_ok(n, target_pos)) return;
            b_.nodes[target_pos] = n;
            b_.edges[r] = e;
            next();
            b_.edges[r] = kNoEdge;
        });
    }

    bool node_ok(NodeId n, std::size_t pos) const;

    void extend_right(std::size_t pos) {
        if (pos + 1 == p_.nodes.size()) {
            extend_left(lo_);
            return;
        }
        step(pos, b_.nodes[pos], true, pos + 1, [&] { extend_right(pos + 1); });
    }

    void extend_left(std::size_t pos) {
        if (pos == 0) {
            fn_(b_);
            return;
        }
        step(pos - 1, b_.nodes[pos], false, pos - 1, [&] { extend_left(pos - 1); });
    }

    const Graph& g_;
    const PathPattern& p_;
    const std::function<void(const PathBinding&)>& fn_;
    TypeList types_;
    PathBinding b_;
    std::size_t lo_ = 0;

public:
};

bool Matcher::node_ok(NodeId n, std::size_t pos) const { return g_.node_matches(n, p_.nodes[pos]); }

}  // namespace

void Graph::for_each_match(const PathPattern& pattern, const std::function<void(const PathBinding&)>& fn) const {
    if (pattern.nodes.size() != pattern.rels.size() + 1) {
        throw Error(ErrorKind::TypeMismatch, "path pattern must alternate nodes and relationships");
    }
    TypeList types;
    for (const auto& rc : pattern.rels) {
        if (rc.type) {
            const auto t = type_id(*rc.type);
            // An unknown type matches nothing, except the zero-hop case of a
            // variable-length relationship.
            if (!t && rc.min_hops > 0) return;
            types.push_back(t);
        } else {
            types.push_back(std::nullopt);
        }
    }
    for (const auto& nc : pattern.nodes) {
        if (nc.label && nodes_by_label(*nc.label).empty()) return;
        if (nc.fixed && !has_node(*nc.fixed)) return;
    }

    // Cheapest anchor among nodes and fixed-length relationships.
    std::size_t best_cost = kUnbounded;
    bool anchor_is_rel = false;
    std::size_t anchor = 0;
    for (std::size_t i = 0; i < pattern.nodes.size(); ++i) {
        const auto& nc = pattern.nodes[i];
        const std::size_t cost = nc.fixed ? 1 : nc.label ? nodes_by_label(*nc.label).size() : nodes_.size();
        if (cost < best_cost) {
            best_cost = cost;
            anchor = i;
            anchor_is_rel = false;
        }
    }
    for (std::size_t r = 0; r < pattern.rels.size(); ++r) {
        const auto& rc = pattern.rels[r];
        if (rc.is_varlen()) continue;
        std::size_t cost = rc.fixed ? 1 : types[r] ? type_index_[*types[r]].size() : edges_.size();
        if (rc.dir == Direction::Both) cost *= 2;
        if (cost < best_cost) {
            best_cost = cost;
            anchor = r;
            anchor_is_rel = true;
        }
    }

    Matcher m(*this, pattern, fn, types);
    if (anchor_is_rel) {
        const auto& rc = pattern.rels[anchor];
        if (rc.fixed) {
            if (*rc.fixed < edges_.size() && (!types[anchor] || edges_[*rc.fixed].type == *types[anchor]))
                m.run_from_edge(anchor, *rc.fixed);
        } else if (types[anchor]) {
            for (EdgeId e : type_index_[*types[anchor]]) m.run_from_edge(anchor, e);
        } else {
            for (const Edge& e : edges_) m.run_from_edge(anchor, e.id);
        }
    } else {
        const auto& nc = pattern.nodes[anchor];
        if (nc.fixed) {
            m.run_from_node(anchor, *nc.fixed);
        } else if (nc.label) {
            for (NodeId n : nodes_by_label(*nc.label)) m.run_from_node(anchor, n);
        } else {
            for (const Node& n : nodes_) m.run_from_node(anchor, n.id);
        }
    }
}

std::vector<PathBinding> Graph::match_path(const PathPattern& pattern) const {
    std::vector<PathBinding> out;
    for_each_match(pattern, [&](const PathBinding& b) { out.push_back(b); });
    return out;
}

void Graph::build_list_index(const std::string& label, const std::string& key) {
    ListIndex idx;
    idx.epoch = prop_epoch_;
    for (NodeId id : nodes_by_label(label)) {
        const Value* v = nodes_[id].prop(key);
        if (!v || !v->is_list()) continue;
        for (const Value& elem : v->as_list()) {
            auto& posting = idx.postings[elem];
            if (posting.empty() || posting.back() != id) posting.push_back(id);
        }
    }
    list_indexes_[{label, key}] = std::move(idx);
}

std::optional<std::span<const NodeId>> Graph::list_index_lookup(const std::string& label, const std::string& key,
                                                                const Value& element) const {
    const auto it = list_indexes_.find({label, key});
    if (it == list_indexes_.end() || it->second.epoch != prop_epoch_) return std::nullopt;
    const auto p = it->second.postings.find(element);
    if (p == it->second.postings.end()) return std::span<const NodeId>{};
    return std::span<const NodeId>(p->second);
}

bool Graph::verify_indexes() const {
    std::unordered_map<std::string, std::vector<NodeId>> labels;
    for (const Node& n : nodes_) {
        if (n.labels != normalize_labels(n.labels)) return false;
        for (const auto& l : n.labels) labels[l].push_back(n.id);
    }
    if (labels != label_index_) return false;

    std::vector<std::vector<EdgeId>> types(type_names_.size());
    std::vector<std::vector<std::pair<TypeId, EdgeId>>> out(nodes_.size()), in(nodes_.size());
    for (const Edge& e : edges_) {
        if (e.type >= type_names_.size()) return false;
        if (!has_node(e.src) || !has_node(e.dst)) return false;
        types[e.type].push_back(e.id);
        out[e.src].emplace_back(e.type, e.id);
        in[e.dst].emplace_back(e.type, e.id);
    }
    if (types != type_index_ || out != out_ || in != in_) return false;

    std::unordered_map<std::size_t, std::vector<NodeId>> merge;
    for (const Node& n : nodes_) merge[merge_key(n.labels, n.props)].push_back(n.id);
    for (const auto& [k, ids] : merge_index_) {
        if (ids.empty()) continue;
        auto a = ids;
        auto it = merge.find(k);
        if (it == merge.end()) return false;
        auto b = it->second;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    for (const auto& [k, ids] : merge) {
        const auto it = merge_index_.find(k);
        if (it == merge_index_.end() || it->second.size() != ids.size()) return false;
    }
    return true;
}

void Graph::dump_jsonl(std::ostream& os) const {
    for (const Node& n : nodes_) {
        nlohmann::ordered_json j;
        j["kind"] = "node";
        j["id"] = n.id;
        j["labels"] = n.labels;
        nlohmann::ordered_json props = nlohmann::ordered_json::object();
        for (const auto& [k, v] : n.props) {
            nlohmann::json x;
            to_json(x, v);
            props[k] = nlohmann::ordered_json::parse(x.dump());
        }
        j["props"] = std::move(props);
        os << j.dump() << '\n';
    }
    for (const Edge& e : edges_) {
        nlohmann::ordered_json j;
        j["kind"] = "edge";
        j["id"] = e.id;
        j["src"] = e.src;
        j["dst"] = e.dst;
        j["type"] = type_names_[e.type];
        nlohmann::ordered_json props = nlohmann::ordered_json::object();
        for (const auto& [k, v] : e.props) {
            nlohmann::json x;
            to_json(x, v);
            props[k] = nlohmann::ordered_json::parse(x.dump());
        }
        j["props"] = std::move(props);
        os << j.dump() << '\n';
    }
}

}  // namespace linea::graph
