#include "linea/evaluation.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <tuple>

#include <fmt/format.h>

#include "linea/baseline.hpp"
#include "linea/error.hpp"

namespace linea {

DatasetStats dataset_stats(std::span<const BuildingRecord> buildings) {
    if (buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    DatasetStats s;
    s.b_count = buildings.size();
    std::size_t small = 0;
    for (const auto& b : buildings) {
        s.ave_a += b.area;
        s.ave_e += b.edge_cnt;
        small += b.edge_cnt <= 8;
    }
    const auto n = static_cast<double>(s.b_count);
    s.ave_a /= n;
    s.ave_e /= n;
    s.rate_e_le8 = static_cast<double>(small) / n;
    return s;
}

PRReport pr_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    PRReport r{tp, fp, fn, 0.0, 0.0};
    if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return r;
}

double jaccard(IdSet a, IdSet b) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (a.empty() && b.empty()) return 1.0;
    IdSet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    const double inter = static_cast<double>(common.size());
    return inter / (static_cast<double>(a.size() + b.size()) - inter);
}

PRReport precision_recall(const std::vector<IdSet>& detected, const std::vector<IdSet>& truth,
                          const MatchSpec& match) {
    // Exact equality is Jaccard similarity 1.
    const double tau = match.kind == MatchCriterion::Exact ? 1.0 : match.tau;
    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    for (std::size_t d = 0; d < detected.size(); ++d) {
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const double j = jaccard(detected[d], truth[t]);
            if (j >= tau) candidates.emplace_back(-j, d, t);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<bool> used_d(detected.size()), used_t(truth.size());
    std::size_t tp = 0;
    for (const auto& [neg_j, d, t] : candidates) {
        if (used_d[d] || used_t[t]) continue;
        used_d[d] = used_t[t] = true;
        ++tp;
    }
    return pr_from_counts(tp, detected.size() - tp, truth.size() - tp);
}

PRReport precision_recall(const std::vector<LinearPattern>& detected, const std::vector<IdSet>& truth,
                          const MatchSpec& match) {
    std::vector<IdSet> sets;
    sets.reserve(detected.size());
    for (const auto& p : detected) sets.push_back(p.building_ids);
    return precision_recall(sets, truth, match);
}

std::string to_string(Schema s) { return s == Schema::A ? "A" : "B"; }
std::string to_string(Method m) { return m == Method::Engine ? "engine" : "baseline"; }

namespace {

class SingleThread {
public:
    SingleThread() : saved_(omp_get_max_threads()) { omp_set_num_threads(1); }
    ~SingleThread() { omp_set_num_threads(saved_); }
    SingleThread(const SingleThread&) = delete;
    SingleThread& operator=(const SingleThread&) = delete;

private:
    int saved_;
};

BenchReport summarize(const std::vector<double>& samples) {
    BenchReport r;
    r.runs = static_cast<int>(samples.size());
    r.min_t = *std::min_element(samples.begin(), samples.end());
    r.max_t = *std::max_element(samples.begin(), samples.end());
    double sum = 0.0;
    for (double s : samples) sum += s;
    r.ave_t = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double s : samples) ss += (s - r.ave_t) * (s - r.ave_t);
        r.std_t = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    }
    // Rounding can put the mean a hair outside [min, max].
    r.ave_t = std::clamp(r.ave_t, r.min_t, r.max_t);
    return r;
}

}  // namespace

BenchReport benchmark(const Dataset& data, Method method, int runs, Schema schema, const BenchOptions& options) {
    if (runs < 1) throw Error(ErrorKind::InvalidConfig, "runs must be >= 1");
    if (data.buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    SingleThread single;
    using clock = std::chrono::steady_clock;
    const Thresholds& t = options.thresholds;
    const auto edges = rng_build(data.buildings, data.roads, options.rng);

    std::vector<double> samples;
    std::size_t v_count = 0;
    std::size_t e_count = 0;
    std::size_t found = 0;
    if (method == Method::Baseline) {
        const BaselineModel model = baseline_model(data.buildings, edges);
        v_count = model.vertices.size();
        e_count = edges.size();
        for (int run = -1; run < runs; ++run) {
            const auto start = clock::now();
            const auto patterns = baseline_recognize(model, data.buildings, t, options.align);
            const std::chrono::duration<double> dt = clock::now() - start;
            found = patterns.size();
            if (run >= 0) samples.push_back(dt.count());
        }
    } else {
        const graph::Graph base = schema == Schema::A ? build_kg_precomputed(data.buildings, edges, t)
                                                      : build_kg_attributes(data.buildings, edges);
        v_count = base.node_count();
        e_count = base.edge_count();
        RecognizeOptions ro;
        ro.align = options.align;
        for (int run = -1; run < runs; ++run) {
            graph::Graph g = base;
            const auto start = clock::now();
            const auto patterns = recognize_linear_patterns(g, data.buildings, t, Mode::Engine, ro);
            const std::chrono::duration<double> dt = clock::now() - start;
            found = patterns.size();
            if (run >= 0) samples.push_back(dt.count());
        }
    }
    BenchReport r = summarize(samples);
    r.v_count = v_count;
    r.e_count = e_count;
    r.patterns = found;
    return r;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "dataset,schema,method,v_count,e_count,runs,min_t,max_t,ave_t,std_t,e_rate\n";
    for (const auto& row : rows) {
        const BenchReport& r = row.report;
        out << fmt::format("{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", row.dataset, to_string(row.schema),
                           to_string(row.method), r.v_count, r.e_count, r.runs, r.min_t, r.max_t, r.ave_t, r.std_t,
                           row.e_rate ? fmt::format("{:.4f}", *row.e_rate) : std::string());
    }
}

namespace {

// Bit-exact across standard libraries, unlike std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::mt19937_64 gen_;
};

geometry::Point rotate(geometry::Point p, double deg) {
    const double r = deg * std::numbers::pi / 180.0;
    return {p.x * std::cos(r) - p.y * std::sin(r), p.x * std::sin(r) + p.y * std::cos(r)};
}

void check_spec(const SyntheticSpec& s) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); };
    if (s.rows < 0 || s.cols < 0 || s.decoys < 0) fail("rows, cols and decoys must be >= 0");
    if (static_cast<long long>(s.rows) * s.cols + s.decoys < 1) fail("spec produces no buildings");
    if (!std::isfinite(s.spacing) || s.spacing <= 0.0) fail("spacing must be > 0");
    if (!std::isfinite(s.rotation)) fail("rotation must be finite");
    const double size = s.building_size.value_or(s.spacing / 2.0);
    if (!(size > 0.0 && size < s.spacing)) fail("building size must be in (0, spacing)");
    if (!(s.jitter >= 0.0 && s.jitter < (s.spacing - size) / 2.0))
        fail("jitter must be >= 0 and small enough that buildings cannot overlap");
}

}  // namespace

SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);
    const double s = spec.spacing;
    const double along = spec.building_size.value_or(s / 2.0);
    const double depth = 1.4 * along;
    const double pitch = depth + 2.0 * s;
    const double cell = 2.5 * s;
    const int decoy_cols = spec.decoys > 0 ? static_cast<int>(std::ceil(std::sqrt(spec.decoys))) : 0;

    SyntheticDataset out;
    BuildingId next = 0;
    for (int r = 0; r < spec.rows; ++r) {
        IdSet row;
        for (int c = 0; c < spec.cols; ++c) {
            // Uniform over the disc of radius jitter.
            const double rho = spec.jitter * std::sqrt(rng.uniform(0.0, 1.0));
            const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const geometry::Point centre{c * s + rho * std::cos(phi), r * pitch + rho * std::sin(phi)};
            auto fp = geometry::rectangle(rotate(centre, spec.rotation), depth, along, 90.0 + spec.rotation);
            out.buildings.push_back(make_building(next, std::move(fp)));
            row.push_back(next++);
        }
        if (spec.cols >= 3) out.truth.push_back(std::move(row));
    }

    // Decoys sit on a lattice; neighbouring cells differ in orientation class
    // by at least 45 degrees, so no two adjacent decoys are similar.
    const double decoy_y0 = spec.rows > 0 ? (spec.rows - 1) * pitch + pitch / 2.0 + cell : 0.0;
    for (int k = 0; k < spec.decoys; ++k) {
        const int r = k / decoy_cols;
        const int c = k % decoy_cols;
        const double length = s * rng.uniform(0.4, 0.9);
        const double axis = 45.0 * ((c % 2) + 2 * (r % 2)) + rng.uniform(-8.0, 8.0);
        const geometry::Point centre{c * cell + rng.uniform(-0.15, 0.15) * cell,
                                     decoy_y0 + r * cell + rng.uniform(-0.15, 0.15) * cell};
        auto fp = geometry::rectangle(rotate(centre, spec.rotation), length, length / 2.0, axis + spec.rotation);
        out.buildings.push_back(make_building(next++, std::move(fp)));
    }

    // A road after every row keeps rows apart from each other and from the decoys.
    const double x_lo = -3.0 * s;
    const double x_hi = std::max(spec.cols * s, decoy_cols * cell) + 3.0 * s;
    const int roads = spec.decoys > 0 ? spec.rows : spec.rows - 1;
    for (int r = 0; r < roads; ++r) {
        const double y = r * pitch + pitch / 2.0;
        out.roads.push_back(geometry::Polyline{{rotate({x_lo, y}, spec.rotation), rotate({x_hi, y}, spec.rotation)}});
    }
    return out;
}

SyntheticSpec spec_for_size(std::size_t n, std::uint64_t seed) {
    // Rows of about a dozen buildings, stacked; about one building in twenty is a decoy.
    constexpr int kRowLength = 12;
    SyntheticSpec spec;
    spec.seed = seed;
    if (n < 4) {
        spec.rows = 1;
        spec.cols = static_cast<int>(n);
        return spec;
    }
    const std::size_t m = n - std::max<std::size_t>(1, n / 20);
    spec.cols = static_cast<int>(std::min<std::size_t>(m, kRowLength));
    spec.rows = static_cast<int>(m / static_cast<std::size_t>(spec.cols));
    spec.decoys = static_cast<int>(n) - spec.rows * spec.cols;
    return spec;
}

}  // namespace linea
