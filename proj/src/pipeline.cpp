#include "linea/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "linea/cypher/executor.hpp"
#include "linea/cypher/parser.hpp"
#include "linea/error.hpp"
#include "linea/rules.hpp"

namespace linea {

using graph::Graph;
using graph::NodeId;
using graph::PropertyMap;
using graph::Value;

namespace {

std::vector<TriplePattern> passing_triples_attrs(const std::unordered_map<BuildingId, ShapeAttrs>& attrs,
                                                 const std::vector<ProximityEdge>& edges, const Thresholds& t) {
    auto rec = [&](BuildingId id) -> const ShapeAttrs& {
        const auto it = attrs.find(id);
        if (it == attrs.end()) throw Error(ErrorKind::UnknownNode, "edge refers to unknown building");
        return it->second;
    };
    std::vector<TriplePattern> out;
    for (const AdjacentPair& p : enumerate_adjacent_pairs(edges)) {
        const ShapeAttrs& a = rec(p.end_a);
        const ShapeAttrs& m = rec(p.middle);
        const ShapeAttrs& b = rec(p.end_b);
        if (!similarity(a, m, t).pass || !similarity(m, b, t).pass) continue;
        if (!linear_triple(p.first, p.second, t).pass) continue;
        TriplePattern tp;
        tp.p_id = static_cast<std::int64_t>(out.size());
        tp.b_ids = {p.end_a, p.middle, p.end_b};
        tp.oris = {p.first.e_ori, p.second.e_ori};
        out.push_back(tp);
    }
    return out;
}

}  // namespace

std::vector<TriplePattern> passing_triples(std::span<const BuildingRecord> buildings,
                                           const std::vector<ProximityEdge>& edges, const Thresholds& t) {
    std::unordered_map<BuildingId, ShapeAttrs> attrs;
    for (const auto& b : buildings) attrs.emplace(b.id, shape_attrs(b));
    return passing_triples_attrs(attrs, edges, t);
}

namespace {

std::unordered_map<BuildingId, NodeId> add_building_nodes(Graph& g, std::span<const BuildingRecord> buildings,
                                                          bool attributes) {
    std::unordered_map<BuildingId, NodeId> node_of;
    for (const auto& b : buildings) {
        PropertyMap props{{"ID", Value(static_cast<std::int64_t>(b.id))}};
        if (attributes) {
            props["Area"] = Value(b.area);
            props["BOri"] = Value(b.b_ori);
            props["EdgeCount"] = Value(static_cast<std::int64_t>(b.edge_cnt));
        }
        if (!node_of.emplace(b.id, g.add_node({"Building"}, std::move(props))).second) {
            throw Error(ErrorKind::FormatError, "duplicate building id " + std::to_string(b.id));
        }
    }
    return node_of;
}

NodeId lookup(const std::unordered_map<BuildingId, NodeId>& node_of, BuildingId id) {
    const auto it = node_of.find(id);
    if (it == node_of.end()) throw Error(ErrorKind::UnknownNode, "edge refers to unknown building");
    return it->second;
}

}  // namespace

Graph build_kg_precomputed(std::span<const BuildingRecord> buildings, const std::vector<ProximityEdge>& edges,
                           const Thresholds& t) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    Graph g;
    const auto node_of = add_building_nodes(g, buildings, false);

    std::unordered_map<BuildingId, const BuildingRecord*> by_id;
    for (const auto& b : buildings) by_id.emplace(b.id, &b);
    for (const auto& e : edges) {
        const NodeId a = lookup(node_of, e.i);
        const NodeId b = lookup(node_of, e.j);
        g.add_edge(a, b, "HAS_Proxi", {{"EOri", Value(e.e_ori)}});
    }
    for (const auto& e : edges) {
        if (similarity(*by_id.at(e.i), *by_id.at(e.j), t).pass) {
            g.add_edge(lookup(node_of, e.i), lookup(node_of, e.j), "HAS_Sim");
        }
    }

    std::unordered_map<BuildingId, Value::List> memberships;
    for (const auto& tp : passing_triples(buildings, edges, t)) {
        for (BuildingId id : tp.b_ids) memberships[id].push_back(Value(tp.p_id));
    }
    for (const auto& b : buildings) {
        auto it = memberships.find(b.id);
        g.set_prop(node_of.at(b.id), "pIDList", Value(it == memberships.end() ? Value::List{} : std::move(it->second)));
    }
    return g;
}

Graph build_kg_precomputed(std::span<const BuildingRecord> buildings, std::span<const geometry::Polyline> roads,
                           const Thresholds& t, const RngOptions& rng) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    return build_kg_precomputed(buildings, rng_build(buildings, roads, rng), t);
}

Graph build_kg_attributes(std::span<const BuildingRecord> buildings, const std::vector<ProximityEdge>& edges) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    Graph g;
    const auto node_of = add_building_nodes(g, buildings, true);
    for (const auto& e : edges) {
        g.add_edge(lookup(node_of, e.i), lookup(node_of, e.j), "HAS_Proxi",
                   {{"EOri", Value(e.e_ori)}, {"Length", Value(e.le)}, {"FR", Value(e.fr)}});
    }
    return g;
}

Graph build_kg_attributes(std::span<const BuildingRecord> buildings, std::span<const geometry::Polyline> roads,
                          const RngOptions& rng) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    return build_kg_attributes(buildings, rng_build(buildings, roads, rng));
}

Schema detect_schema(const Graph& g) {
    for (NodeId n : g.nodes_by_label("Building")) {
        if (g.node(n).prop("Area")) return Schema::B;
    }
    return Schema::A;
}

// ---- scripts

namespace {

using ThresholdKey = std::tuple<double, double, double, double, double, double, double, int>;

ThresholdKey key_of(const Thresholds& t, int which) {
    return {t.delta1, t.delta2, t.delta3, t.eta1, t.eta2, t.eta3, t.td, which};
}

const cypher::Script& cached_script(const Thresholds& t, RuleScript which) {
    static std::mutex mu;
    static std::map<ThresholdKey, std::unique_ptr<cypher::Script>> cache;
    const std::lock_guard lock(mu);
    auto& slot = cache[key_of(t, static_cast<int>(which))];
    if (!slot) slot = std::make_unique<cypher::Script>(cypher::parse(instantiate_rules(rule_text(which), t)));
    return *slot;
}

}  // namespace

const cypher::Script& recognition_script(const Thresholds& t, bool listing) {
    return cached_script(t, listing ? RuleScript::RecognizeListing : RuleScript::Recognize);
}

const cypher::Script& derivation_script(const Thresholds& t) { return cached_script(t, RuleScript::Derive); }

// ---- alignment and merging

bool aligned(const TriplePattern& a, const TriplePattern& b, const Thresholds& t, AlignRule rule) {
    if (rule == AlignRule::Listing) {
        for (double x : a.oris)
            for (double y : b.oris)
                if (geometry::angle_diff_180(x, y) > t.eta1) return false;
        return true;
    }
    // Outer edges: the edges of each triple that are not shared with the other.
    auto edge_key = [](BuildingId u, BuildingId v) { return std::pair(std::min(u, v), std::max(u, v)); };
    for (int ea = 0; ea < 2; ++ea) {
        for (int eb = 0; eb < 2; ++eb) {
            if (edge_key(a.b_ids[ea], a.b_ids[ea + 1]) != edge_key(b.b_ids[eb], b.b_ids[eb + 1])) continue;
            return geometry::angle_diff_180(a.oris[1 - ea], b.oris[1 - eb]) <= t.eta1;
        }
    }
    return false;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // True when a and b were in different sets.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

namespace {

using CentroidMap = std::unordered_map<BuildingId, geometry::Point>;

CentroidMap centroid_map(std::span<const BuildingRecord> buildings) {
    CentroidMap m;
    m.reserve(buildings.size());
    for (const auto& b : buildings) m.emplace(b.id, b.centroid);
    return m;
}

std::vector<BuildingId> order_by_axis(std::vector<BuildingId> ids, const CentroidMap& centroid) {
    if (ids.size() < 2) return ids;
    std::vector<geometry::Point> pts;
    pts.reserve(ids.size());
    for (BuildingId id : ids) {
        const auto it = centroid.find(id);
        if (it == centroid.end()) throw Error(ErrorKind::UnknownNode, "pattern refers to unknown building");
        pts.push_back(it->second);
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& p : pts) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
        syy += (p.y - my) * (p.y - my);
    }
    // Principal axis of the centroid scatter.
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const double ux = std::cos(theta);
    const double uy = std::sin(theta);
    std::vector<std::pair<double, BuildingId>> keyed;
    keyed.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        keyed.emplace_back((pts[i].x - mx) * ux + (pts[i].y - my) * uy, ids[i]);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<BuildingId> out;
    out.reserve(keyed.size());
    for (const auto& [proj, id] : keyed) out.push_back(id);
    if (out.front() > out.back()) std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<BuildingId> order_pattern(std::vector<BuildingId> ids, std::span<const BuildingRecord> buildings) {
    return order_by_axis(std::move(ids), centroid_map(buildings));
}

std::vector<LinearPattern> merge_triples(const std::vector<TriplePattern>& triples,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& links,
                                         std::span<const BuildingRecord> buildings) {
    UnionFind uf(triples.size());
    for (const auto& [a, b] : links) uf.unite(a, b);
    std::map<std::size_t, std::pair<std::set<BuildingId>, std::vector<std::int64_t>>> comps;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        auto& c = comps[uf.find(i)];
        c.first.insert(triples[i].b_ids.begin(), triples[i].b_ids.end());
        c.second.push_back(triples[i].p_id);
    }
    const CentroidMap centroids = centroid_map(buildings);
    std::vector<LinearPattern> out;
    out.reserve(comps.size());
    for (auto& [root, c] : comps) {
        LinearPattern lp;
        lp.building_ids = order_by_axis({c.first.begin(), c.first.end()}, centroids);
        lp.source_triples = std::move(c.second);
        std::sort(lp.source_triples.begin(), lp.source_triples.end());
        out.push_back(std::move(lp));
    }
    std::sort(out.begin(), out.end(),
              [](const LinearPattern& x, const LinearPattern& y) { return x.building_ids < y.building_ids; });
    return out;
}

// ---- recognition

namespace {

BuildingId id_of(const Graph& g, NodeId n) {
    const Value* v = g.node(n).prop("ID");
    if (!v || !v->is_int()) throw Error(ErrorKind::MissingProperty, "Building node without integer ID");
    return v->as_int();
}

// Per-building view of the graph shared by the direct-mode variants.
struct DirectView {
    std::vector<NodeId> nodes;                                  // Building nodes
    std::unordered_map<NodeId, std::vector<std::pair<NodeId, double>>> proxi;  // neighbor, EOri
    std::set<std::pair<NodeId, NodeId>> sim;                    // unordered, stored min/max
    std::unordered_map<NodeId, std::vector<std::int64_t>> pids;  // sorted

    bool similar(NodeId a, NodeId b) const { return sim.count(std::minmax(a, b)) != 0; }
};

DirectView read_adjacency(const Graph& g) {
    DirectView v;
    const auto nodes = g.nodes_by_label("Building");
    v.nodes.assign(nodes.begin(), nodes.end());
    for (graph::EdgeId e : g.edges_by_type("HAS_Proxi")) {
        const auto& edge = g.edge(e);
        const Value* ori = edge.prop("EOri");
        if (!ori || !ori->is_number()) throw Error(ErrorKind::MissingProperty, "HAS_Proxi without EOri");
        v.proxi[edge.src].emplace_back(edge.dst, ori->as_number());
        v.proxi[edge.dst].emplace_back(edge.src, ori->as_number());
    }
    for (graph::EdgeId e : g.edges_by_type("HAS_Sim")) {
        const auto& edge = g.edge(e);
        v.sim.insert(std::minmax(edge.src, edge.dst));
    }
    return v;
}

// Chains B1 - B2 - B3 along proximity and similarity edges whose three
// buildings share a triple id, as in the recognition rules.
std::vector<TriplePattern> chains_from_memberships(const Graph& g, const DirectView& v) {
    std::set<std::tuple<BuildingId, BuildingId, BuildingId, double, double>> seen;
    std::vector<TriplePattern> out;
    auto shares = [&](NodeId a, NodeId b, NodeId c) {
        const auto ia = v.pids.find(a);
        const auto ib = v.pids.find(b);
        const auto ic = v.pids.find(c);
        if (ia == v.pids.end() || ib == v.pids.end() || ic == v.pids.end()) return false;
        for (std::int64_t p : ia->second) {
            if (std::binary_search(ib->second.begin(), ib->second.end(), p) &&
                std::binary_search(ic->second.begin(), ic->second.end(), p))
                return true;
        }
        return false;
    };
    for (NodeId mid : v.nodes) {
        const auto it = v.proxi.find(mid);
        if (it == v.proxi.end()) continue;
        const auto& nb = it->second;
        for (std::size_t x = 0; x < nb.size(); ++x) {
            for (std::size_t y = 0; y < nb.size(); ++y) {
                if (x == y) continue;
                const auto [n1, o1] = nb[x];
                const auto [n3, o3] = nb[y];
                if (n1 == n3) continue;
                const BuildingId id1 = id_of(g, n1);
                const BuildingId id3 = id_of(g, n3);
                if (!(id1 < id3)) continue;
                if (!v.similar(n1, mid) || !v.similar(mid, n3) || !shares(n1, mid, n3)) continue;
                const BuildingId id2 = id_of(g, mid);
                if (!seen.emplace(id1, id2, id3, o1, o3).second) continue;
                TriplePattern tp;
                tp.b_ids = {id1, id2, id3};
                tp.oris = {o1, o3};
                out.push_back(tp);
            }
        }
    }
    return out;
}

void number_triples(std::vector<TriplePattern>& triples) {
    std::sort(triples.begin(), triples.end(), [](const TriplePattern& a, const TriplePattern& b) {
        return std::tie(a.b_ids, a.oris) < std::tie(b.b_ids, b.oris);
    });
    for (std::size_t i = 0; i < triples.size(); ++i) triples[i].p_id = static_cast<std::int64_t>(i);
}

// Pairs of distinct triples sharing at least two buildings that pass the
// alignment rule, found through a building -> triples index.
std::vector<std::pair<std::size_t, std::size_t>> alignment_links(const std::vector<TriplePattern>& triples,
                                                                  const Thresholds& t, AlignRule rule) {
    std::unordered_map<BuildingId, std::vector<std::size_t>> of_building;
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (BuildingId b : triples[i].b_ids) of_building[b].push_back(i);
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        std::map<std::size_t, int> shared;
        for (BuildingId b : triples[i].b_ids)
            for (std::size_t j : of_building[b])
                if (j != i) ++shared[j];
        for (const auto& [j, count] : shared) {
            if (count >= 2 && aligned(triples[i], triples[j], t, rule)) links.emplace_back(i, j);
        }
    }
    return links;
}

// Sets pIDList from similarity-and-arrangement passing triples of a schema B
// graph computed directly from the attributes.
void direct_memberships_b(const Graph& g, DirectView& v, const Thresholds& t) {
    std::unordered_map<NodeId, ShapeAttrs> attrs_of;
    std::unordered_map<BuildingId, ShapeAttrs> attrs;
    std::unordered_map<BuildingId, NodeId> node_of;
    for (NodeId n : v.nodes) {
        const auto& node = g.node(n);
        const Value* area = node.prop("Area");
        const Value* bori = node.prop("BOri");
        const Value* ec = node.prop("EdgeCount");
        if (!area || !bori || !ec) throw Error(ErrorKind::MissingProperty, "Building without Area/BOri/EdgeCount");
        const ShapeAttrs a{area->as_number(), bori->as_number(), static_cast<int>(ec->as_int())};
        attrs_of.emplace(n, a);
        attrs.emplace(id_of(g, n), a);
        node_of.emplace(id_of(g, n), n);
    }
    std::vector<ProximityEdge> edges;
    for (graph::EdgeId e : g.edges_by_type("HAS_Proxi")) {
        const auto& edge = g.edge(e);
        const Value* len = edge.prop("Length");
        const Value* fr = edge.prop("FR");
        const Value* ori = edge.prop("EOri");
        if (!len || !fr || !ori) throw Error(ErrorKind::MissingProperty, "HAS_Proxi without EOri/Length/FR");
        ProximityEdge pe;
        pe.i = id_of(g, edge.src);
        pe.j = id_of(g, edge.dst);
        if (pe.i > pe.j) std::swap(pe.i, pe.j);
        pe.le = len->as_number();
        pe.e_ori = ori->as_number();
        pe.fr = fr->as_number();
        edges.push_back(pe);
        if (similarity(attrs_of.at(edge.src), attrs_of.at(edge.dst), t).pass) {
            v.sim.insert(std::minmax(edge.src, edge.dst));
        }
    }
    for (const auto& tp : passing_triples_attrs(attrs, edges, t)) {
        for (BuildingId b : tp.b_ids) v.pids[node_of.at(b)].push_back(tp.p_id);
    }
}

std::vector<TriplePattern> recognize_direct(const Graph& g, const Thresholds& t) {
    DirectView v = read_adjacency(g);
    if (detect_schema(g) == Schema::B) {
        v.sim.clear();
        direct_memberships_b(g, v, t);
    } else {
        for (NodeId n : v.nodes) {
            const Value* list = g.node(n).prop("pIDList");
            if (!list || !list->is_list()) continue;
            auto& ids = v.pids[n];
            for (const Value& x : list->as_list())
                if (x.is_int()) ids.push_back(x.as_int());
            std::sort(ids.begin(), ids.end());
        }
    }
    return chains_from_memberships(g, v);
}

// Runs the derivation script on a schema B graph, then stores pIDList for
// the returned triples whose two edges were also found similar.
void derive_memberships(Graph& g, const Thresholds& t, const RecognizeOptions& options,
                        const cypher::ExecOptions& exec) {
    std::optional<cypher::Script> custom;
    if (options.derive_script) custom = cypher::parse(instantiate_rules(*options.derive_script, t));
    const cypher::Script& script = custom ? *custom : derivation_script(t);
    cypher::ResultTable table = cypher::execute(script, g, exec);

    auto similar = [&](NodeId a, NodeId b) {
        for (NodeId n : g.neighbors(a, "HAS_Sim", graph::Direction::Both))
            if (n == b) return true;
        return false;
    };
    std::vector<std::array<NodeId, 3>> rows;
    for (const auto& row : table.rows) {
        if (row.size() != 3 || !row[0].is_node() || !row[1].is_node() || !row[2].is_node()) {
            throw Error(ErrorKind::TypeMismatch, "derivation script must return three buildings");
        }
        const NodeId a = row[0].as_node().id;
        const NodeId m = row[1].as_node().id;
        const NodeId b = row[2].as_node().id;
        if (similar(a, m) && similar(m, b)) rows.push_back({a, m, b});
    }
    std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
        return std::make_tuple(id_of(g, x[0]), id_of(g, x[1]), id_of(g, x[2])) <
               std::make_tuple(id_of(g, y[0]), id_of(g, y[1]), id_of(g, y[2]));
    });
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    std::unordered_map<NodeId, Value::List> memberships;
    for (std::size_t p = 0; p < rows.size(); ++p)
        for (NodeId n : rows[p]) memberships[n].push_back(Value(static_cast<std::int64_t>(p)));
    const auto nodes = g.nodes_by_label("Building");
    const std::vector<NodeId> building_nodes(nodes.begin(), nodes.end());
    for (NodeId n : building_nodes) {
        auto it = memberships.find(n);
        g.set_prop(n, "pIDList", Value(it == memberships.end() ? Value::List{} : std::move(it->second)));
    }
}

std::vector<TriplePattern> recognize_engine(Graph& g, const Thresholds& t, const RecognizeOptions& options,
                                            std::vector<std::pair<NodeId, NodeId>>& closure) {
    cypher::ExecOptions exec;
    exec.symmetric_create = options.symmetric_create;
    exec.use_list_index = options.use_list_index;
    if (detect_schema(g) == Schema::B) derive_memberships(g, t, options, exec);

    std::optional<cypher::Script> custom;
    if (options.recognize_script) custom = cypher::parse(instantiate_rules(*options.recognize_script, t));
    const cypher::Script& script = custom ? *custom : recognition_script(t, options.listing_rules);
    const cypher::ResultTable table = cypher::execute(script, g, exec);

    for (const auto& row : table.rows) {
        if (row.size() != 1 || !row[0].is_path() || row[0].as_path().nodes.empty()) {
            throw Error(ErrorKind::TypeMismatch, "recognition script must return one path per row");
        }
        const auto& nodes = row[0].as_path().nodes;
        closure.emplace_back(nodes.front(), nodes.back());
    }

    std::vector<TriplePattern> triples;
    for (NodeId n : g.nodes_by_label("Triple_Pattern")) {
        const Value* ids = g.node(n).prop("bIDList");
        const Value* oris = g.node(n).prop("OriList");
        if (!ids || !oris || !ids->is_list() || !oris->is_list() || ids->as_list().size() != 3 ||
            oris->as_list().size() != 2) {
            throw Error(ErrorKind::TypeMismatch, "malformed Triple_Pattern node");
        }
        TriplePattern tp;
        tp.p_id = n;  // node id until renumbered
        for (int i = 0; i < 3; ++i) tp.b_ids[i] = ids->as_list()[i].as_int();
        for (int i = 0; i < 2; ++i) tp.oris[i] = oris->as_list()[i].as_number();
        triples.push_back(tp);
    }
    return triples;
}

}  // namespace

std::vector<LinearPattern> recognize_linear_patterns(Graph& g, std::span<const BuildingRecord> buildings,
                                                     const Thresholds& t, Mode mode, const RecognizeOptions& options,
                                                     RecognitionTrace* trace) {
    std::vector<TriplePattern> triples;
    std::vector<std::pair<std::size_t, std::size_t>> links;
    if (mode == Mode::Direct) {
        triples = recognize_direct(g, t);
        number_triples(triples);
        links = alignment_links(triples, t, options.align);
    } else {
        if (options.align != AlignRule::Listing) {
            throw Error(ErrorKind::InvalidConfig, "the outer_edges alignment rule is only available in direct mode");
        }
        std::vector<std::pair<NodeId, NodeId>> closure;
        triples = recognize_engine(g, t, options, closure);
        constexpr std::size_t kNone = static_cast<std::size_t>(-1);
        std::vector<std::size_t> index_of_node(g.node_count(), kNone);
        {
            std::vector<std::pair<TriplePattern, NodeId>> keyed;
            for (const auto& tp : triples) keyed.emplace_back(tp, static_cast<NodeId>(tp.p_id));
            number_triples(triples);
            // number_triples sorts; recover node -> index by matching contents.
            std::map<std::tuple<std::array<BuildingId, 3>, std::array<double, 2>>, std::size_t> pos;
            for (std::size_t i = 0; i < triples.size(); ++i) pos[{triples[i].b_ids, triples[i].oris}] = i;
            for (const auto& [tp, node] : keyed) index_of_node[node] = pos.at({tp.b_ids, tp.oris});
        }
        // The closure lists every connected pair; a spanning forest of it
        // carries the same components.
        UnionFind uf(triples.size());
        for (const auto& [a, b] : closure) {
            if (a == b || a >= index_of_node.size() || b >= index_of_node.size()) continue;
            const std::size_t ia = index_of_node[a];
            const std::size_t ib = index_of_node[b];
            if (ia == kNone || ib == kNone) continue;
            if (uf.unite(ia, ib)) links.emplace_back(std::min(ia, ib), std::max(ia, ib));
        }
        std::sort(links.begin(), links.end());
    }
    auto patterns = merge_triples(triples, links, buildings);
    if (trace) {
        trace->triples = std::move(triples);
        trace->aligned = std::move(links);
    }
    return patterns;
}

std::vector<LinearPattern> recognize_linear_patterns(Graph& g, std::span<const BuildingRecord> buildings,
                                                     const Thresholds& t, Mode mode, const RecognizeOptions& options) {
    return recognize_linear_patterns(g, buildings, t, mode, options, nullptr);
}

}  // namespace linea
