#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "linea/evaluation.hpp"

namespace linea::io {

struct GeoData {
    std::vector<BuildingRecord> buildings;
    std::vector<geometry::Polyline> roads;
};

// FeatureCollection of Polygons (buildings) and LineStrings (roads). A
// building's id is its `id` property, else its feature index. Throws
// FormatError on malformed input and DegeneratePolygon on bad footprints.
GeoData parse_geojson(const std::string& text);
// Throws IoError when the file cannot be read.
GeoData read_geojson(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

std::string buildings_geojson(const std::vector<BuildingRecord>& buildings,
                              const std::vector<geometry::Polyline>& roads = {});

// One LineString per pattern through the ordered centroids, with a
// `building_ids` property.
std::string patterns_geojson(const std::vector<LinearPattern>& patterns, const std::vector<BuildingRecord>& buildings);
// Reads back the `building_ids` of every feature.
std::vector<IdSet> parse_patterns_geojson(const std::string& text);

// Truth files are a JSON array of id arrays.
std::string truth_json(const std::vector<IdSet>& truth);
std::vector<IdSet> parse_truth_json(const std::string& text);

// Footprints in grey, roads dashed, pattern lines in red; y points up.
std::string svg_overlay(const std::vector<BuildingRecord>& buildings, const std::vector<geometry::Polyline>& roads,
                        const std::vector<LinearPattern>& patterns);

}  // namespace linea::io
