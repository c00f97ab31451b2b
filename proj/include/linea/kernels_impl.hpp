#pragma once

#include <algorithm>
#include <cmath>

namespace linea::kernels {

template <class Fn>
void WitnessIndex::for_each_near(std::uint32_t i, double radius, Fn&& fn) const {
    any_near(i, radius, [&](std::uint32_t k) {
        fn(k);
        return false;
    });
}

template <class Pred>
bool WitnessIndex::any_near(std::uint32_t i, double radius, Pred&& pred) const {
    const geometry::BBox& b = boxes_[i];
    auto cell_of = [&](double v, double origin, std::int64_t limit) {
        const auto c = static_cast<std::int64_t>(std::floor((v - origin) / cell_));
        return std::clamp<std::int64_t>(c, 0, limit - 1);
    };
    const std::int64_t c0 = cell_of(b.min_x - radius, origin_x_, cols_);
    const std::int64_t c1 = cell_of(b.max_x + radius, origin_x_, cols_);
    const std::int64_t r0 = cell_of(b.min_y - radius, origin_y_, rows_);
    const std::int64_t r1 = cell_of(b.max_y + radius, origin_y_, rows_);
    for (std::int64_t r = r0; r <= r1; ++r) {
        for (std::int64_t c = c0; c <= c1; ++c) {
            for (std::uint32_t k : cells_[static_cast<std::size_t>(r * cols_ + c)]) {
                // A box spanning several cells is reported once, from its home cell.
                const geometry::BBox& kb = boxes_[k];
                const std::int64_t home_c = std::max(c0, cell_of(kb.min_x, origin_x_, cols_));
                const std::int64_t home_r = std::max(r0, cell_of(kb.min_y, origin_y_, rows_));
                if (home_c != c || home_r != r) continue;
                if (b.distance_to(kb) < radius && pred(k)) return true;
            }
        }
    }
    return false;
}

namespace detail {

template <class DistFn>
bool survives(const WitnessIndex& index, IndexPair pair, DistFn& dist) {
    const auto [i, j] = pair;
    const double dij = dist(i, j);
    auto witness = [&](std::uint32_t k) {
        if (k == i || k == j) return false;
        if (index.box(j).distance_to(index.box(k)) >= dij) return false;
        return dist(i, k) < dij && dist(j, k) < dij;
    };
    // Witnesses usually sit close to i, so search outwards and stop at the
    // first one; long candidate pairs would otherwise scan the whole index.
    for (double r = std::min(dij, index.cell_size());; r = std::min(dij, 2.0 * r)) {
        if (index.any_near(i, r, witness)) return false;
        if (r >= dij) return true;
    }
}

}  // namespace detail

template <class DistFn>
std::vector<IndexPair> filter_candidates_serial(const WitnessIndex& index, std::span<const IndexPair> cands,
                                                DistFn&& dist) {
    std::vector<IndexPair> out;
    for (const IndexPair& p : cands) {
        if (detail::survives(index, p, dist)) out.push_back(p);
    }
    return out;
}

template <class DistFn>
std::vector<IndexPair> filter_candidates_parallel(const WitnessIndex& index, std::span<const IndexPair> cands,
                                                  DistFn&& dist) {
    std::vector<char> keep(cands.size(), 0);
    const auto count = static_cast<std::int64_t>(cands.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t c = 0; c < count; ++c) {
        keep[static_cast<std::size_t>(c)] = detail::survives(index, cands[static_cast<std::size_t>(c)], dist) ? 1 : 0;
    }
    std::vector<IndexPair> out;
    for (std::size_t c = 0; c < cands.size(); ++c) {
        if (keep[c]) out.push_back(cands[c]);
    }
    return out;
}

}  // namespace linea::kernels
