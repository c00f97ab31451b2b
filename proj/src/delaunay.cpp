#include "linea/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/polygon/voronoi.hpp>

namespace linea::delaunay {

std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(std::span<const geometry::Point> pts) {
    using Pair = std::pair<std::uint32_t, std::uint32_t>;
    std::vector<Pair> out;
    const std::size_t n = pts.size();
    if (n < 2) return out;

    double min_x = pts[0].x, min_y = pts[0].y, max_x = pts[0].x, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    const double extent = std::max({max_x - min_x, max_y - min_y, 1e-9});
    // Millimetre resolution where it fits in the 31-bit input range of the builder.
    const double scale = std::min(1000.0, 1.0e9 / extent);

    // Collapse coincident (after quantization) points onto one representative.
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t> rep_of;
    std::vector<std::uint32_t> site_owner;
    std::vector<boost::polygon::point_data<std::int32_t>> sites;
    std::vector<std::vector<std::uint32_t>> members;
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto qx = static_cast<std::int64_t>(std::llround((pts[i].x - min_x) * scale));
        const auto qy = static_cast<std::int64_t>(std::llround((pts[i].y - min_y) * scale));
        auto [it, inserted] = rep_of.try_emplace({qx, qy}, static_cast<std::uint32_t>(sites.size()));
        if (inserted) {
            sites.emplace_back(static_cast<std::int32_t>(qx), static_cast<std::int32_t>(qy));
            members.emplace_back();
        }
        members[it->second].push_back(i);
    }

    auto add = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        out.emplace_back(std::min(a, b), std::max(a, b));
    };
    for (const auto& group : members) {
        for (std::size_t a = 0; a < group.size(); ++a)
            for (std::size_t b = a + 1; b < group.size(); ++b) add(group[a], group[b]);
    }

    if (sites.size() >= 2) {
        boost::polygon::voronoi_diagram<double> vd;
        boost::polygon::construct_voronoi(sites.begin(), sites.end(), &vd);
        for (const auto& e : vd.edges()) {
            const auto s1 = e.cell()->source_index();
            const auto s2 = e.twin()->cell()->source_index();
            if (s1 >= s2) continue;
            for (auto a : members[s1])
                for (auto b : members[s2]) add(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace linea::delaunay
