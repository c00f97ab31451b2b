#include "linea/relations.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "linea/error.hpp"

namespace linea {

void Thresholds::validate() const {
    auto fail = [](const char* what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (!(delta1 >= 1.0)) fail("delta1 must be >= 1");
    if (!(delta2 > 0.0)) fail("delta2 must be > 0");
    if (!(delta3 >= 1.0)) fail("delta3 must be >= 1");
    if (!(eta1 > 0.0)) fail("eta1 must be > 0");
    if (!(eta2 >= 1.0)) fail("eta2 must be >= 1");
    if (!(eta3 > 0.0 && eta3 <= 1.0)) fail("eta3 must be in (0,1]");
    if (!(td > 0.0)) fail("td must be > 0");
}

SimilarityResult similarity(const ShapeAttrs& bi, const ShapeAttrs& bj, const Thresholds& t) {
    SimilarityResult r;
    r.a_r = std::max(bi.area, bj.area) / std::min(bi.area, bj.area);
    r.o_r = geometry::angle_diff_180(bi.b_ori, bj.b_ori);
    r.e_r = static_cast<double>(std::max(bi.edge_cnt, bj.edge_cnt)) /
            static_cast<double>(std::min(bi.edge_cnt, bj.edge_cnt));
    r.pass = r.a_r <= t.delta1 && r.o_r <= t.delta2 && r.e_r <= t.delta3;
    return r;
}

StrResult linear_triple(const ProximityEdge& e_ij, const ProximityEdge& e_jk, const Thresholds& t) {
    const bool same = e_ij.i == e_jk.i && e_ij.j == e_jk.j;
    const int shared = (e_ij.i == e_jk.i) + (e_ij.i == e_jk.j) + (e_ij.j == e_jk.i) + (e_ij.j == e_jk.j);
    if (same || shared != 1) throw Error(ErrorKind::NotAdjacent, "edges must share exactly one building");

    StrResult r;
    r.d_o = geometry::angle_diff_180(e_ij.e_ori, e_jk.e_ori);
    const double l1 = clamp_length(e_ij.le, t.td);
    const double l2 = clamp_length(e_jk.le, t.td);
    r.d_l = std::max(l1, l2) / std::min(l1, l2);
    r.fr_ij = e_ij.fr;
    r.fr_jk = e_jk.fr;
    r.pass = r.d_o <= t.eta1 && r.d_l <= t.eta2 && r.fr_ij >= t.eta3 && r.fr_jk >= t.eta3;
    return r;
}

std::vector<AdjacentPair> enumerate_adjacent_pairs(const std::vector<ProximityEdge>& edges) {
    std::map<BuildingId, std::vector<std::size_t>> incident;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].i == edges[e].j) continue;
        incident[edges[e].i].push_back(e);
        incident[edges[e].j].push_back(e);
    }
    std::vector<AdjacentPair> out;
    for (const auto& [mid, list] : incident) {
        for (std::size_t a = 0; a < list.size(); ++a) {
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                const ProximityEdge& ea = edges[list[a]];
                const ProximityEdge& eb = edges[list[b]];
                const BuildingId oa = ea.i == mid ? ea.j : ea.i;
                const BuildingId ob = eb.i == mid ? eb.j : eb.i;
                // Parallel edges between the same two buildings share both ends.
                if (oa == ob) continue;
                AdjacentPair p;
                p.middle = mid;
                if (oa < ob) {
                    p = {ea, eb, oa, mid, ob};
                } else {
                    p = {eb, ea, ob, mid, oa};
                }
                out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const AdjacentPair& x, const AdjacentPair& y) {
        return std::tie(x.end_a, x.middle, x.end_b) < std::tie(y.end_a, y.middle, y.end_b);
    });
    return out;
}

}  // namespace linea
