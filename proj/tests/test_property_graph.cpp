#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "linea/error.hpp"
#include "linea/property_graph.hpp"
#include "support.hpp"

using namespace linea;
using namespace linea::graph;

namespace {

NodeConstraint labelled(const char* l) {
    NodeConstraint c;
    c.label = l;
    return c;
}

RelConstraint typed(const char* t, Direction d = Direction::Out) {
    RelConstraint r;
    r.type = t;
    r.dir = d;
    return r;
}

// Every node tuple and edge tuple, filtered by the pattern.
std::vector<PathBinding> brute_force(const Graph& g, const PathPattern& p) {
    std::vector<PathBinding> out;
    PathBinding cur;
    std::function<void(std::size_t)> extend = [&](std::size_t pos) {
        if (pos == p.nodes.size()) {
            out.push_back(cur);
            return;
        }
        for (const Node& n : g.nodes()) {
            if (p.nodes[pos].label && !n.has_label(*p.nodes[pos].label)) continue;
            if (pos == 0) {
                cur.nodes.push_back(n.id);
                extend(1);
                cur.nodes.pop_back();
                continue;
            }
            const RelConstraint& r = p.rels[pos - 1];
            for (const Edge& e : g.edges()) {
                if (r.type && g.type_name(e.type) != *r.type) continue;
                const NodeId a = cur.nodes.back();
                const bool fwd = e.src == a && e.dst == n.id, bwd = e.dst == a && e.src == n.id;
                if (!((r.dir == Direction::Out && fwd) || (r.dir == Direction::In && bwd) ||
                      (r.dir == Direction::Both && (fwd || bwd))))
                    continue;
                if (std::find(cur.edges.begin(), cur.edges.end(), e.id) != cur.edges.end()) continue;
                cur.nodes.push_back(n.id);
                cur.edges.push_back(e.id);
                extend(pos + 1);
                cur.nodes.pop_back();
                cur.edges.pop_back();
            }
        }
    };
    extend(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PathBinding> sorted(std::vector<PathBinding> v) {
    std::sort(v.begin(), v.end());
    return v;
}

Graph random_graph(testing::Rand& r, int nodes, int edges) {
    Graph g;
    const char* labels[] = {"A", "B"};
    const char* types[] = {"X", "Y"};
    for (int i = 0; i < nodes; ++i) g.add_node({labels[r.integer(0, 1)]}, {{"ID", Value(i)}});
    for (int i = 0; i < edges; ++i) {
        g.add_edge(static_cast<NodeId>(r.integer(0, nodes - 1)), static_cast<NodeId>(r.integer(0, nodes - 1)),
                   types[r.integer(0, 1)]);
    }
    return g;
}

}  // namespace

TEST_CASE("nodes and edges") {
    Graph g;
    const NodeId a = g.add_node({"Building"}, {{"ID", Value(7)}});
    const NodeId b = g.add_node({"Building"}, {{"ID", Value(8)}});
    CHECK(a != b);
    CHECK(g.node(a).prop("ID")->as_int() == 7);
    const auto by_label = g.nodes_by_label("Building");
    CHECK(std::find(by_label.begin(), by_label.end(), a) != by_label.end());
    CHECK(g.nodes_by_label("Nothing").empty());

    const EdgeId e1 = g.add_edge(a, b, "HAS_Proxi");
    const EdgeId e2 = g.add_edge(a, b, "HAS_Proxi");
    CHECK(e1 != e2);
    CHECK(g.neighbors(a, "HAS_Proxi", Direction::Out) == std::vector<NodeId>{b, b});
    CHECK(g.neighbors(b, "HAS_Proxi", Direction::In) == std::vector<NodeId>{a, a});
    CHECK(g.neighbors(b, "HAS_Proxi", Direction::Out).empty());
    CHECK(g.edges_of_type_count("HAS_Proxi") == 2);
    try {
        g.add_edge(a, 99, "HAS_Proxi");
        FAIL("expected UnknownNode");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownNode);
    }
    CHECK(g.verify_indexes());
}

TEST_CASE("single-edge path patterns") {
    Graph g;
    const NodeId a = g.add_node({"Building"}, {});
    const NodeId b = g.add_node({"Building"}, {});
    g.add_edge(a, b, "HAS_Proxi");
    PathPattern p{{labelled("Building"), labelled("Building")}, {typed("HAS_Proxi")}};
    CHECK(g.match_path(p).size() == 1);
    p.rels[0].dir = Direction::In;
    const auto rev = g.match_path(p);
    REQUIRE(rev.size() == 1);
    CHECK(rev[0].nodes[0] == b);
    p.rels[0].dir = Direction::Both;
    CHECK(g.match_path(p).size() == 2);
    p.rels[0].type = "Other";
    CHECK(g.match_path(p).empty());
}

TEST_CASE("a reversed directed pattern finds nothing on one edge") {
    Graph g;
    const NodeId a = g.add_node({"Building"}, {});
    const NodeId b = g.add_node({"Building"}, {});
    g.add_edge(a, b, "HAS_Proxi");
    PathPattern p{{labelled("Building"), labelled("Building")}, {typed("HAS_Proxi")}};
    p.nodes[0].fixed = b;
    CHECK(g.match_path(p).empty());
}

TEST_CASE("chain patterns on the bent-row graph equal brute-force enumeration") {
    const auto b = testing::bent_row_buildings();
    const Graph g = build_kg_precomputed(b, std::span<const geometry::Polyline>{}, Thresholds{});
    for (Direction d : {Direction::Out, Direction::In, Direction::Both}) {
        PathPattern p{{labelled("Building"), labelled("Building"), labelled("Building")},
                      {typed("HAS_Proxi", d), typed("HAS_Proxi", d)}};
        CHECK(sorted(g.match_path(p)) == brute_force(g, p));
        PathPattern s{{labelled("Building"), labelled("Building"), labelled("Building")},
                      {typed("HAS_Proxi", d), typed("HAS_Sim", d)}};
        CHECK(sorted(g.match_path(s)) == brute_force(g, s));
    }
}

TEST_CASE("match_path equals brute force on random small graphs") {
    testing::Rand r(41);
    for (int trial = 0; trial < 60; ++trial) {
        const Graph g = random_graph(r, r.integer(1, 12), r.integer(0, 25));
        const char* labels[] = {"A", "B"};
        const char* types[] = {"X", "Y"};
        const int len = r.integer(1, 3);
        PathPattern p;
        for (int i = 0; i <= len; ++i) {
            NodeConstraint c;
            if (r.coin()) c.label = labels[r.integer(0, 1)];
            p.nodes.push_back(c);
        }
        for (int i = 0; i < len; ++i) {
            RelConstraint rc;
            if (r.coin(0.8)) rc.type = types[r.integer(0, 1)];
            rc.dir = static_cast<Direction>(r.integer(0, 2));
            p.rels.push_back(rc);
        }
        if (std::none_of(p.nodes.begin(), p.nodes.end(), [](const auto& c) { return c.label.has_value(); }) &&
            std::none_of(p.rels.begin(), p.rels.end(), [](const auto& c) { return c.type.has_value(); })) {
            p.nodes[0].label = "A";
        }
        CHECK(sorted(g.match_path(p)) == brute_force(g, p));
    }
}

TEST_CASE("variable-length reach") {
    Graph g;
    const NodeId lone = g.add_node({"T"}, {});
    CHECK(g.reach_varlen(lone, "E", 0, std::nullopt, Direction::Out) == std::vector<NodeId>{lone});

    const NodeId a = g.add_node({"T"}, {}), b = g.add_node({"T"}, {}), c = g.add_node({"T"}, {});
    g.add_edge(a, b, "E");
    g.add_edge(b, c, "E");
    CHECK(g.reach_varlen(a, "E", 1, 1, Direction::Out) == std::vector<NodeId>{b});
    CHECK(g.reach_varlen(a, "E", 0, std::nullopt, Direction::Out) == std::vector<NodeId>{a, b, c});
    CHECK(g.reach_varlen(c, "E", 1, std::nullopt, Direction::In) == std::vector<NodeId>{a, b});
    CHECK(g.reach_varlen(a, "E", 2, 2, Direction::Out) == std::vector<NodeId>{c});

    const NodeId x = g.add_node({"T"}, {}), y = g.add_node({"T"}, {});
    g.add_edge(x, y, "E");
    g.add_edge(y, x, "E");
    CHECK(g.reach_varlen(x, "E", 0, std::nullopt, Direction::Out) == std::vector<NodeId>{x, y});
    CHECK_THROWS_AS((void)g.reach_varlen(1000, "E", 0, std::nullopt, Direction::Out), Error);
}

TEST_CASE("unbounded reach is closed under re-running from a member") {
    testing::Rand r(42);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = random_graph(r, r.integer(1, 30), r.integer(0, 40));
        const NodeId s = static_cast<NodeId>(r.integer(0, static_cast<int>(g.node_count()) - 1));
        const auto dir = static_cast<Direction>(r.integer(0, 2));
        const auto closure = g.reach_varlen(s, "X", 0, std::nullopt, dir);
        for (NodeId m : closure) {
            const auto again = g.reach_varlen(m, "X", 0, std::nullopt, dir);
            CHECK(std::includes(closure.begin(), closure.end(), again.begin(), again.end()));
        }
    }
}

TEST_CASE("merge is structural and idempotent") {
    Graph g;
    const Value::List ids{Value(1), Value(2), Value(3)};
    const NodeId m1 = g.merge_node({"Triple_Pattern"}, {{"bIDList", Value(ids)}});
    const std::size_t count = g.node_count();
    bool created = true;
    const NodeId m2 = g.merge_node({"Triple_Pattern"}, {{"bIDList", Value(ids)}}, &created);
    CHECK(m1 == m2);
    CHECK_FALSE(created);
    CHECK(g.node_count() == count);
    const NodeId m3 = g.merge_node({"Triple_Pattern"}, {{"bIDList", Value(Value::List{Value(3), Value(2), Value(1)})}});
    CHECK(m3 != m1);

    const NodeId added = g.add_node({"Building"}, {{"ID", Value(5)}});
    CHECK(g.merge_node({"Building"}, {{"ID", Value(5)}}) == added);
    // Different labels do not merge.
    CHECK(g.merge_node({"Other"}, {{"ID", Value(5)}}) != added);
    // Int and float are different values.
    CHECK(g.merge_node({"Building"}, {{"ID", Value(5.0)}}) != added);
}

TEST_CASE("indexes stay coherent under random mutation") {
    testing::Rand r(43);
    Graph g;
    for (int step = 0; step < 500; ++step) {
        const int op = r.integer(0, 3);
        if (op == 0 || g.node_count() == 0) {
            g.add_node({r.coin() ? "A" : "B"}, {{"k", Value(r.integer(0, 5))}});
        } else if (op == 1) {
            g.add_edge(static_cast<NodeId>(r.integer(0, static_cast<int>(g.node_count()) - 1)),
                       static_cast<NodeId>(r.integer(0, static_cast<int>(g.node_count()) - 1)), r.coin() ? "X" : "Y");
        } else if (op == 2) {
            g.merge_node({"A"}, {{"k", Value(r.integer(0, 5))}});
        } else {
            g.set_prop(static_cast<NodeId>(r.integer(0, static_cast<int>(g.node_count()) - 1)), "k", Value(r.integer(0, 5)));
        }
        if (step % 50 == 0) CHECK(g.verify_indexes());
    }
    CHECK(g.verify_indexes());
    for (const Edge& e : g.edges()) CHECK(!g.type_name(e.type).empty());
}

TEST_CASE("list index is refreshed after mutation") {
    Graph g;
    const NodeId a = g.add_node({"B"}, {{"L", Value(Value::List{Value(1), Value(2)})}});
    g.build_list_index("B", "L");
    auto hit = g.list_index_lookup("B", "L", Value(2));
    REQUIRE(hit.has_value());
    CHECK(std::vector<NodeId>(hit->begin(), hit->end()) == std::vector<NodeId>{a});
    g.set_prop(a, "L", Value(Value::List{Value(3)}));
    CHECK_FALSE(g.list_index_lookup("B", "L", Value(2)).has_value());
}

TEST_CASE("jsonl dump") {
    Graph g;
    const NodeId a = g.add_node({"Building"}, {{"ID", Value(1)}});
    const NodeId b = g.add_node({"Building"}, {{"ID", Value(2)}});
    g.add_edge(a, b, "HAS_Proxi", {{"EOri", Value(12.5)}});
    std::ostringstream os;
    g.dump_jsonl(os);
    std::istringstream in(os.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].find("\"kind\":\"node\"") != std::string::npos);
    CHECK(lines[2].find("\"kind\":\"edge\"") != std::string::npos);
    CHECK(lines[2].find("HAS_Proxi") != std::string::npos);
}
