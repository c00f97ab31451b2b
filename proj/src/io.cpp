#include "linea/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "linea/error.hpp"

namespace linea::io {

using nlohmann::json;

namespace {

[[noreturn]] void format_error(const std::string& what) { throw Error(ErrorKind::FormatError, what); }

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        format_error(std::string(what) + " is not valid JSON: " + e.what());
    }
}

geometry::Point point_of(const json& c) {
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
        format_error("a position must be an array of at least two numbers");
    }
    return {c[0].get<double>(), c[1].get<double>()};
}

std::vector<geometry::Point> points_of(const json& arr) {
    if (!arr.is_array()) format_error("coordinates must be an array");
    std::vector<geometry::Point> out;
    out.reserve(arr.size());
    for (const auto& c : arr) out.push_back(point_of(c));
    return out;
}

// Outer ring; holes are ignored.
std::vector<geometry::Point> outer_ring(const json& rings) {
    if (!rings.is_array() || rings.empty()) format_error("a Polygon needs at least one ring");
    return points_of(rings[0]);
}

BuildingId id_of(const json& feature, std::size_t index) {
    const auto props = feature.find("properties");
    if (props == feature.end() || !props->is_object()) return static_cast<BuildingId>(index);
    const auto id = props->find("id");
    if (id == props->end() || id->is_null()) return static_cast<BuildingId>(index);
    if (id->is_number_integer()) return id->get<BuildingId>();
    if (id->is_number_float()) {
        const double d = id->get<double>();
        if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<BuildingId>(d);
    }
    if (id->is_string()) {
        const std::string s = id->get<std::string>();
        std::size_t used = 0;
        try {
            const long long v = std::stoll(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
    }
    format_error("feature " + std::to_string(index) + ": id must be an integer");
}

json ring_json(std::span<const geometry::Point> ring) {
    json r = json::array();
    for (const auto& p : ring) r.push_back({p.x, p.y});
    if (!ring.empty()) r.push_back({ring.front().x, ring.front().y});
    return r;
}

json line_json(const std::vector<geometry::Point>& pts) {
    json r = json::array();
    for (const auto& p : pts) r.push_back({p.x, p.y});
    return r;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
}

GeoData parse_geojson(const std::string& text) {
    const json doc = parse_json(text, "input");
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") format_error("expected a FeatureCollection");
    const auto features = doc.find("features");
    if (features == doc.end() || !features->is_array()) format_error("FeatureCollection without a features array");

    GeoData out;
    std::set<BuildingId> seen;
    for (std::size_t i = 0; i < features->size(); ++i) {
        const json& f = (*features)[i];
        if (!f.is_object() || f.value("type", "") != "Feature") format_error("feature " + std::to_string(i) + " is not a Feature");
        const auto g = f.find("geometry");
        if (g == f.end() || !g->is_object()) format_error("feature " + std::to_string(i) + " has no geometry");
        const std::string type = g->value("type", "");
        const auto coords = g->find("coordinates");
        if (coords == g->end()) format_error("feature " + std::to_string(i) + " has no coordinates");

        if (type == "Polygon" || type == "MultiPolygon") {
            std::vector<geometry::Point> ring;
            if (type == "Polygon") {
                ring = outer_ring(*coords);
            } else {
                if (!coords->is_array() || coords->size() != 1) format_error("only single-part MultiPolygons are supported");
                ring = outer_ring((*coords)[0]);
            }
            const BuildingId id = id_of(f, i);
            if (!seen.insert(id).second) format_error("duplicate building id " + std::to_string(id));
            out.buildings.push_back(make_building(id, geometry::Polygon(std::move(ring))));
        } else if (type == "LineString") {
            out.roads.push_back({points_of(*coords)});
        } else if (type == "MultiLineString") {
            if (!coords->is_array()) format_error("coordinates must be an array");
            for (const auto& part : *coords) out.roads.push_back({points_of(part)});
        } else {
            format_error("feature " + std::to_string(i) + ": unsupported geometry '" + type + "'");
        }
    }
    return out;
}

GeoData read_geojson(const std::string& path) { return parse_geojson(read_file(path)); }

std::string buildings_geojson(const std::vector<BuildingRecord>& buildings, const std::vector<geometry::Polyline>& roads) {
    json features = json::array();
    for (const auto& b : buildings) {
        features.push_back({{"type", "Feature"},
                            {"properties", {{"id", b.id}}},
                            {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring_json(b.footprint.ring())})}}}});
    }
    for (const auto& r : roads) {
        features.push_back({{"type", "Feature"},
                            {"properties", {{"kind", "road"}}},
                            {"geometry", {{"type", "LineString"}, {"coordinates", line_json(r.points)}}}});
    }
    return json{{"type", "FeatureCollection"}, {"features", features}}.dump() + "\n";
}

std::string patterns_geojson(const std::vector<LinearPattern>& patterns, const std::vector<BuildingRecord>& buildings) {
    std::map<BuildingId, geometry::Point> centroid;
    for (const auto& b : buildings) centroid[b.id] = b.centroid;
    json features = json::array();
    for (const auto& p : patterns) {
        std::vector<geometry::Point> pts;
        for (BuildingId id : p.building_ids) {
            const auto it = centroid.find(id);
            if (it == centroid.end()) throw Error(ErrorKind::UnknownNode, "pattern refers to unknown building");
            pts.push_back(it->second);
        }
        features.push_back({{"type", "Feature"},
                            {"properties", {{"building_ids", p.building_ids}}},
                            {"geometry", {{"type", "LineString"}, {"coordinates", line_json(pts)}}}});
    }
    return json{{"type", "FeatureCollection"}, {"features", features}}.dump() + "\n";
}

namespace {

IdSet ids_of(const json& arr, const char* what) {
    if (!arr.is_array()) format_error(std::string(what) + " must be an array of integers");
    IdSet out;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) format_error(std::string(what) + " must be an array of integers");
        out.push_back(v.get<BuildingId>());
    }
    return out;
}

}  // namespace

std::vector<IdSet> parse_patterns_geojson(const std::string& text) {
    const json doc = parse_json(text, "pattern file");
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
        !doc["features"].is_array()) {
        format_error("expected a FeatureCollection");
    }
    std::vector<IdSet> out;
    for (const auto& f : doc["features"]) {
        if (!f.is_object() || !f.contains("properties") || !f["properties"].is_object() ||
            !f["properties"].contains("building_ids")) {
            format_error("pattern feature without building_ids");
        }
        out.push_back(ids_of(f["properties"]["building_ids"], "building_ids"));
    }
    return out;
}

std::string truth_json(const std::vector<IdSet>& truth) { return json(truth).dump() + "\n"; }

std::vector<IdSet> parse_truth_json(const std::string& text) {
    const json doc = parse_json(text, "truth file");
    if (!doc.is_array()) format_error("truth must be an array of id arrays");
    std::vector<IdSet> out;
    for (const auto& s : doc) out.push_back(ids_of(s, "truth entry"));
    return out;
}

std::string svg_overlay(const std::vector<BuildingRecord>& buildings, const std::vector<geometry::Polyline>& roads,
                        const std::vector<LinearPattern>& patterns) {
    constexpr double kWidth = 1000.0;
    constexpr double kMargin = 10.0;
    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = -lo_x;
    double hi_y = -lo_x;
    auto grow = [&](geometry::Point p) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto& b : buildings)
        for (const auto& p : b.footprint.ring()) grow(p);
    for (const auto& r : roads)
        for (const auto& p : r.points) grow(p);
    if (!(lo_x <= hi_x)) lo_x = lo_y = hi_x = hi_y = 0.0;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    const double scale = (kWidth - 2 * kMargin) / span;
    const double height = (hi_y - lo_y) * scale + 2 * kMargin;
    auto px = [&](geometry::Point p) {
        return fmt::format("{:.2f},{:.2f}", kMargin + (p.x - lo_x) * scale, height - kMargin - (p.y - lo_y) * scale);
    };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
        kWidth, height, kWidth, height);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& r : roads) {
        std::string pts;
        for (const auto& p : r.points) pts += px(p) + " ";
        out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n", pts);
    }
    std::map<BuildingId, geometry::Point> centroid;
    for (const auto& b : buildings) {
        centroid[b.id] = b.centroid;
        std::string pts;
        for (const auto& p : b.footprint.ring()) pts += px(p) + " ";
        out += fmt::format("<polygon points=\"{}\" fill=\"#ddd\" stroke=\"#555\" stroke-width=\"0.5\"/>\n", pts);
    }
    for (const auto& p : patterns) {
        std::string pts;
        for (BuildingId id : p.building_ids) {
            const auto it = centroid.find(id);
            if (it != centroid.end()) pts += px(it->second) + " ";
        }
        out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#d00\" stroke-width=\"2\"/>\n", pts);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace linea::io
