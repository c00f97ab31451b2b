#include <doctest.h>

#include <nlohmann/json.hpp>

#include "linea/config.hpp"
#include "linea/error.hpp"
#include "linea/io.hpp"
#include "support.hpp"

using namespace linea;
using nlohmann::json;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::IoError;
}

std::string feature(const std::string& geometry, const std::string& props = "{}") {
    return R"({"type":"Feature","properties":)" + props + R"(,"geometry":)" + geometry + "}";
}

std::string collection(const std::vector<std::string>& features) {
    std::string out = R"({"type":"FeatureCollection","features":[)";
    for (std::size_t i = 0; i < features.size(); ++i) out += (i ? "," : "") + features[i];
    return out + "]}";
}

const std::string kSquare = R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]})";

}  // namespace

TEST_CASE("GeoJSON round trip") {
    SyntheticSpec spec;
    spec.rows = 2;
    spec.cols = 4;
    spec.decoys = 3;
    spec.jitter = 1.0;
    const auto d = generate_synthetic(spec);
    const auto back = io::parse_geojson(io::buildings_geojson(d.buildings, d.roads));
    REQUIRE(back.buildings.size() == d.buildings.size());
    CHECK(back.roads.size() == d.roads.size());
    for (std::size_t i = 0; i < d.buildings.size(); ++i) {
        CHECK(back.buildings[i].id == d.buildings[i].id);
        CHECK(back.buildings[i].area == doctest::Approx(d.buildings[i].area));
        CHECK(back.buildings[i].edge_cnt == d.buildings[i].edge_cnt);
    }

    const std::vector<LinearPattern> ps{{{0, 1, 2, 3}, {0, 1}}, {{4, 5, 6}, {2}}};
    const auto ids = io::parse_patterns_geojson(io::patterns_geojson(ps, d.buildings));
    CHECK(ids == std::vector<IdSet>{{0, 1, 2, 3}, {4, 5, 6}});
    CHECK(io::parse_truth_json(io::truth_json(d.truth)) == d.truth);

    const std::string svg = io::svg_overlay(d.buildings, d.roads, ps);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("GeoJSON ids and geometry kinds") {
    const auto d = io::parse_geojson(collection({feature(kSquare, R"({"id":"17"})"), feature(kSquare, R"({"id":4.0})"),
                                                 feature(kSquare),
                                                 feature(R"({"type":"LineString","coordinates":[[0,0],[5,5]]})")}));
    REQUIRE(d.buildings.size() == 3);
    CHECK(d.buildings[0].id == 17);
    CHECK(d.buildings[1].id == 4);
    CHECK(d.buildings[2].id == 2);
    CHECK(d.roads.size() == 1);
    // The closing vertex is dropped.
    CHECK(d.buildings[0].footprint.size() == 4);

    const auto m = io::parse_geojson(collection(
        {feature(R"({"type":"MultiPolygon","coordinates":[[[[0,0],[1,0],[1,1],[0,0]]]]})")}));
    CHECK(m.buildings.size() == 1);
}

TEST_CASE("GeoJSON errors") {
    CHECK(kind_of([] { io::parse_geojson("{"); }) == ErrorKind::FormatError);
    CHECK(kind_of([] { io::parse_geojson("[]"); }) == ErrorKind::FormatError);
    CHECK(kind_of([] { io::parse_geojson(collection({feature(kSquare, R"({"id":1})"), feature(kSquare, R"({"id":1})")})); }) ==
          ErrorKind::FormatError);
    CHECK(kind_of([] { io::parse_geojson(collection({feature(kSquare, R"({"id":"x"})")})); }) == ErrorKind::FormatError);
    CHECK(kind_of([] { io::parse_geojson(collection({feature(R"({"type":"Point","coordinates":[0,0]})")})); }) ==
          ErrorKind::FormatError);
    CHECK(kind_of([] {
              io::parse_geojson(collection({feature(R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[2,0],[0,0]]]})")}));
          }) == ErrorKind::DegeneratePolygon);
    CHECK(kind_of([] { io::read_geojson("/nonexistent/buildings.geojson"); }) == ErrorKind::IoError);
    CHECK(kind_of([] { io::parse_truth_json("[[1, \"a\"]]"); }) == ErrorKind::FormatError);
}

TEST_CASE("config parsing") {
    const Config def = config_from_json(json::object());
    CHECK(def.thresholds.delta1 == 2.0);
    CHECK(def.thresholds.td == 2.0);
    CHECK(def.schema == Schema::A);

    const Config c = parse_config(R"({"eta1": 12, "map_scale": 25000, "schema": "B", "mode": "direct",
                                      "match_criterion": "jaccard", "jaccard_tau": 0.7, "align_rule": "outer_edges",
                                      "rng_metric": "centroid", "fr_combine": "min"})");
    CHECK(c.thresholds.eta1 == 12.0);
    CHECK(c.thresholds.td == doctest::Approx(5.0));
    CHECK(c.schema == Schema::B);
    CHECK(c.mode == Mode::Direct);
    CHECK(c.match.kind == MatchCriterion::Jaccard);
    CHECK(c.match.tau == 0.7);
    CHECK(c.align_rule == AlignRule::OuterEdges);
    CHECK(c.rng().metric == RngMetric::Centroid);
    CHECK(c.rng().fr_combine == geometry::FrCombine::Min);

    // Round trip through JSON.
    const Config back = config_from_json(config_to_json(c));
    CHECK(back.thresholds.td == c.thresholds.td);
    CHECK(back.map_scale == c.map_scale);
    CHECK(back.align_rule == c.align_rule);

    for (const char* bad : {R"({"nope": 1})", R"({"delta1": "2"})", R"({"delta1": 0.5})", R"({"schema": "C"})",
                            R"({"td": 2, "map_scale": 10000})", R"({"map_scale": -5})", R"({"jaccard_tau": 0})", "[1]",
                            "{"}) {
        CHECK_MESSAGE(kind_of([&] { parse_config(bad); }) == ErrorKind::InvalidConfig, bad);
    }
}

TEST_CASE("generator spec parsing") {
    const auto s = synthetic_spec_from_json(json::parse(R"({"rows": 2, "cols": 7, "jitter": 1.5, "seed": 9})"));
    CHECK(s.rows == 2);
    CHECK(s.cols == 7);
    CHECK(s.jitter == 1.5);
    CHECK(s.seed == 9);
    for (const char* bad : {R"({"rows": 1.5})", R"({"what": 1})", R"({"seed": -1})", R"([])"}) {
        CHECK_MESSAGE(kind_of([&] { synthetic_spec_from_json(json::parse(bad)); }) == ErrorKind::InvalidSpec, bad);
    }
}
