#pragma once

// Data-parallel inner loops of the proximity stage. Every kernel has a serial
// reference next to its OpenMP version; tests assert they agree exactly and the
// kernel benchmark compares their throughput.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "linea/geometry.hpp"

namespace linea::kernels {

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

std::vector<double> distance_matrix_serial(std::span<const geometry::Polygon> polys);
std::vector<double> distance_matrix_parallel(std::span<const geometry::Polygon> polys);

// All pairs i<j of an n*n distance matrix with no witness k such that
// max(d(i,k), d(j,k)) < d(i,j).
std::vector<IndexPair> rng_pairs_serial(std::span<const double> matrix, std::size_t n);
std::vector<IndexPair> rng_pairs_parallel(std::span<const double> matrix, std::size_t n);

// Witness search for candidate pairs without a full matrix. Distances are
// computed on demand; a uniform grid over lower-bounding boxes limits the
// witnesses examined to those that can be closer than d(i,j).
class WitnessIndex {
public:
    // boxes[k] must satisfy boxes[i].distance_to(boxes[k]) <= dist(i,k).
    WitnessIndex(std::vector<geometry::BBox> boxes);

    // Every k whose box lies closer than radius to box i (i included).
    template <class Fn>
    void for_each_near(std::uint32_t i, double radius, Fn&& fn) const;
    // Same scan, stopping at the first k for which pred(k) holds.
    template <class Pred>
    bool any_near(std::uint32_t i, double radius, Pred&& pred) const;

    [[nodiscard]] std::size_t size() const { return boxes_.size(); }
    [[nodiscard]] double cell_size() const { return cell_; }
    [[nodiscard]] const geometry::BBox& box(std::size_t i) const { return boxes_[i]; }

private:
    std::vector<geometry::BBox> boxes_;
    double origin_x_ = 0.0, origin_y_ = 0.0, cell_ = 1.0;
    std::int64_t cols_ = 1, rows_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;
};

// dist(i, j) must be symmetric. Returns the candidates that survive, in input order.
template <class DistFn>
std::vector<IndexPair> filter_candidates_serial(const WitnessIndex& index, std::span<const IndexPair> cands,
                                                DistFn&& dist);
template <class DistFn>
std::vector<IndexPair> filter_candidates_parallel(const WitnessIndex& index, std::span<const IndexPair> cands,
                                                  DistFn&& dist);

}  // namespace linea::kernels

#include "linea/kernels_impl.hpp"
