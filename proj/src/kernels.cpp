#include "linea/kernels.hpp"

#include <cmath>
#include <limits>

namespace linea::kernels {

std::vector<double> distance_matrix_serial(std::span<const geometry::Polygon> polys) {
    const std::size_t n = polys.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = geometry::min_distance(polys[i], polys[j]);
            m[i * n + j] = d;
            m[j * n + i] = d;
        }
    }
    return m;
}

std::vector<double> distance_matrix_parallel(std::span<const geometry::Polygon> polys) {
    const std::size_t n = polys.size();
    std::vector<double> m(n * n, 0.0);
    const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = geometry::min_distance(polys[i], polys[j]);
            m[i * n + j] = d;
            m[j * n + i] = d;
        }
    }
    return m;
}

namespace {

bool no_witness(std::span<const double> m, std::size_t n, std::size_t i, std::size_t j) {
    const double dij = m[i * n + j];
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (m[i * n + k] < dij && m[j * n + k] < dij) return false;
    }
    return true;
}

}  // namespace

std::vector<IndexPair> rng_pairs_serial(std::span<const double> matrix, std::size_t n) {
    std::vector<IndexPair> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (no_witness(matrix, n, i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<IndexPair> rng_pairs_parallel(std::span<const double> matrix, std::size_t n) {
    std::vector<std::vector<IndexPair>> per_row(n);
    const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (no_witness(matrix, n, i, j)) per_row[i].emplace_back(i, j);
        }
    }
    std::vector<IndexPair> out;
    for (const auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
    return out;
}

WitnessIndex::WitnessIndex(std::vector<geometry::BBox> boxes) : boxes_(std::move(boxes)) {
    if (boxes_.empty()) {
        cells_.resize(1);
        return;
    }
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const auto& b : boxes_) {
        min_x = std::min(min_x, b.min_x);
        min_y = std::min(min_y, b.min_y);
        max_x = std::max(max_x, b.max_x);
        max_y = std::max(max_y, b.max_y);
    }
    const double w = std::max(max_x - min_x, 1e-6);
    const double h = std::max(max_y - min_y, 1e-6);
    // About one box per cell on average.
    cell_ = std::max(std::sqrt(w * h / static_cast<double>(boxes_.size())), 1e-6);
    cols_ = std::min<std::int64_t>(static_cast<std::int64_t>(w / cell_) + 1, 4096);
    rows_ = std::min<std::int64_t>(static_cast<std::int64_t>(h / cell_) + 1, 4096);
    cell_ = std::max(w / static_cast<double>(cols_), h / static_cast<double>(rows_)) * (1.0 + 1e-9);
    origin_x_ = min_x;
    origin_y_ = min_y;
    cells_.assign(static_cast<std::size_t>(cols_ * rows_), {});
    auto cell_of = [&](double v, double origin, std::int64_t limit) {
        const auto c = static_cast<std::int64_t>(std::floor((v - origin) / cell_));
        return std::clamp<std::int64_t>(c, 0, limit - 1);
    };
    for (std::uint32_t k = 0; k < boxes_.size(); ++k) {
        const auto& b = boxes_[k];
        for (auto r = cell_of(b.min_y, origin_y_, rows_); r <= cell_of(b.max_y, origin_y_, rows_); ++r)
            for (auto c = cell_of(b.min_x, origin_x_, cols_); c <= cell_of(b.max_x, origin_x_, cols_); ++c)
                cells_[static_cast<std::size_t>(r * cols_ + c)].push_back(k);
    }
}

}  // namespace linea::kernels
