#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linea/pipeline.hpp"

namespace linea {

struct DatasetStats {
    std::size_t b_count = 0;
    double ave_a = 0.0;       // mean footprint area
    double ave_e = 0.0;       // mean edge count
    double rate_e_le8 = 0.0;  // share of buildings with at most 8 edges
};

// Throws EmptyDataset.
DatasetStats dataset_stats(std::span<const BuildingRecord> buildings);

struct PRReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;  // 0 when nothing was detected
    double recall = 0.0;     // 0 when the truth is empty
};

enum class MatchCriterion { Exact, Jaccard };

struct MatchSpec {
    MatchCriterion kind = MatchCriterion::Exact;
    double tau = 0.8;
};

using IdSet = std::vector<BuildingId>;

PRReport pr_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

// Greedy one-to-one matching, best overlap first.
PRReport precision_recall(const std::vector<IdSet>& detected, const std::vector<IdSet>& truth,
                          const MatchSpec& match = {});
PRReport precision_recall(const std::vector<LinearPattern>& detected, const std::vector<IdSet>& truth,
                          const MatchSpec& match = {});

double jaccard(IdSet a, IdSet b);

enum class Method { Engine, Baseline };

struct Dataset {
    std::string name;
    std::vector<BuildingRecord> buildings;
    std::vector<geometry::Polyline> roads;
};

struct BenchReport {
    int runs = 0;
    double min_t = 0.0;
    double max_t = 0.0;
    double ave_t = 0.0;
    double std_t = 0.0;  // sample deviation, 0 for a single run
    std::size_t v_count = 0;
    std::size_t e_count = 0;
    std::size_t patterns = 0;
};

struct BenchOptions {
    Thresholds thresholds;
    RngOptions rng;
    AlignRule align = AlignRule::Listing;
};

// Times recognition only: the graph (or the baseline's adjacency list) is
// built once beforehand and copied before every run. Under schema B the
// derivation scripts are part of the timed work. One untimed warm-up run,
// one thread. Throws InvalidConfig when runs < 1.
BenchReport benchmark(const Dataset& data, Method method, int runs, Schema schema, const BenchOptions& options = {});

struct BenchRow {
    std::string dataset;
    Schema schema = Schema::A;
    Method method = Method::Engine;
    BenchReport report;
    std::optional<double> e_rate;
};

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

std::string to_string(Schema s);
std::string to_string(Method m);

struct SyntheticSpec {
    int rows = 1;
    int cols = 5;
    double spacing = 20.0;  // centre distance along a row
    double jitter = 0.0;    // max centre displacement distance
    double rotation = 0.0;  // whole scene, degrees
    int decoys = 0;
    std::uint64_t seed = 0;
    std::optional<double> building_size;  // extent along the row, default half the spacing
};

struct SyntheticDataset {
    std::vector<BuildingRecord> buildings;
    std::vector<geometry::Polyline> roads;
    std::vector<IdSet> truth;  // every row of at least three buildings
};

// Rows of near-identical rectangles separated by roads, with a block of
// mutually dissimilar decoys beyond the last road. Building ids are row-major,
// decoys last. Throws InvalidSpec.
SyntheticDataset generate_synthetic(const SyntheticSpec& spec);

// A spec with roughly n buildings, for size sweeps.
SyntheticSpec spec_for_size(std::size_t n, std::uint64_t seed = 1);

}  // namespace linea
