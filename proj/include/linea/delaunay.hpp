#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "linea/geometry.hpp"

namespace linea::delaunay {

// Undirected Delaunay edges (index pairs, first < second, sorted) of a planar
// point set. Coincident points are linked to each other. Backed by the
// Boost.Polygon Voronoi builder on a quantized copy of the input.
std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(std::span<const geometry::Point> pts);

}  // namespace linea::delaunay
