#include "linea/baseline.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "linea/error.hpp"

namespace linea {

BaselineModel baseline_model(std::span<const BuildingRecord> buildings, const std::vector<ProximityEdge>& edges) {
    BaselineModel m;
    std::map<BuildingId, std::size_t> index;
    for (const auto& b : buildings) {
        BaselineModel::Vertex v;
        v.id = b.id;
        v.attrs = {{"area", b.area}, {"b_ori", b.b_ori}, {"edge_cnt", static_cast<double>(b.edge_cnt)}};
        index[b.id] = m.vertices.size();
        m.vertices.push_back(std::move(v));
    }
    for (const auto& e : edges) {
        const auto a = index.find(e.i);
        const auto b = index.find(e.j);
        if (a == index.end() || b == index.end()) throw Error(ErrorKind::UnknownNode, "edge refers to unknown building");
        const std::map<std::string, double> attrs{{"le", e.le}, {"e_ori", e.e_ori}, {"fr", e.fr}};
        m.vertices[a->second].arcs.push_back({b->second, attrs});
        m.vertices[b->second].arcs.push_back({a->second, attrs});
    }
    return m;
}

namespace {

ShapeAttrs shape_of(const BaselineModel::Vertex& v) {
    return {v.attrs.at("area"), v.attrs.at("b_ori"), static_cast<int>(v.attrs.at("edge_cnt"))};
}

ProximityEdge edge_of(const BaselineModel& m, std::size_t u, const BaselineModel::Arc& arc) {
    ProximityEdge e;
    e.i = std::min(m.vertices[u].id, m.vertices[arc.to].id);
    e.j = std::max(m.vertices[u].id, m.vertices[arc.to].id);
    e.le = arc.attrs.at("le");
    e.e_ori = arc.attrs.at("e_ori");
    e.fr = arc.attrs.at("fr");
    return e;
}

const BaselineModel::Arc* find_arc(const BaselineModel& m, std::size_t u, std::size_t v) {
    for (const auto& arc : m.vertices[u].arcs)
        if (arc.to == v) return &arc;
    return nullptr;
}

bool similar(const BaselineModel& m, std::size_t u, std::size_t v, const Thresholds& t) {
    return similarity(shape_of(m.vertices[u]), shape_of(m.vertices[v]), t).pass;
}

}  // namespace

std::vector<LinearPattern> baseline_recognize(const BaselineModel& m, std::span<const BuildingRecord> buildings,
                                              const Thresholds& t, AlignRule align) {
    // Collinear triples by visiting every path of length two.
    std::set<std::array<std::size_t, 3>> passing_sets;
    for (std::size_t j = 0; j < m.vertices.size(); ++j) {
        for (const auto& a1 : m.vertices[j].arcs) {
            for (const auto& a2 : m.vertices[j].arcs) {
                const std::size_t i = a1.to;
                const std::size_t k = a2.to;
                if (i == k || !(m.vertices[i].id < m.vertices[k].id)) continue;
                if (!similar(m, i, j, t) || !similar(m, j, k, t)) continue;
                if (!linear_triple(edge_of(m, j, a1), edge_of(m, j, a2), t).pass) continue;
                std::array<std::size_t, 3> s{i, j, k};
                std::sort(s.begin(), s.end());
                passing_sets.insert(s);
            }
        }
    }

    // Any similar chain through the three buildings of a collinear triple
    // counts, whichever building sits in the middle.
    std::set<std::tuple<BuildingId, BuildingId, BuildingId, double, double>> chains;
    for (const auto& s : passing_sets) {
        for (int mid = 0; mid < 3; ++mid) {
            std::size_t x = s[(mid + 1) % 3];
            std::size_t y = s[(mid + 2) % 3];
            const std::size_t j = s[mid];
            if (m.vertices[x].id > m.vertices[y].id) std::swap(x, y);
            const auto* ax = find_arc(m, j, x);
            const auto* ay = find_arc(m, j, y);
            if (!ax || !ay || !similar(m, x, j, t) || !similar(m, j, y, t)) continue;
            chains.emplace(m.vertices[x].id, m.vertices[j].id, m.vertices[y].id, ax->attrs.at("e_ori"),
                           ay->attrs.at("e_ori"));
        }
    }
    std::vector<TriplePattern> triples;
    for (const auto& [a, b, c, o1, o2] : chains) {
        TriplePattern tp;
        tp.p_id = static_cast<std::int64_t>(triples.size());
        tp.b_ids = {a, b, c};
        tp.oris = {o1, o2};
        triples.push_back(tp);
    }

    // Every pair of triples is compared.
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t p = 0; p < triples.size(); ++p) {
        for (std::size_t q = p + 1; q < triples.size(); ++q) {
            int shared = 0;
            for (BuildingId x : triples[p].b_ids)
                for (BuildingId y : triples[q].b_ids) shared += x == y;
            if (shared >= 2 && aligned(triples[p], triples[q], t, align)) links.emplace_back(p, q);
        }
    }
    return merge_triples(triples, links, buildings);
}

std::vector<LinearPattern> baseline_recognize(std::span<const BuildingRecord> buildings,
                                              std::span<const geometry::Polyline> roads, const Thresholds& t,
                                              const RngOptions& rng, AlignRule align) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    return baseline_recognize(baseline_model(buildings, rng_build(buildings, roads, rng)), buildings, t, align);
}

}  // namespace linea
