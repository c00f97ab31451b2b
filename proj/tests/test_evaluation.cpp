#include <doctest.h>

#include <sstream>

#include "linea/error.hpp"
#include "linea/evaluation.hpp"
#include "support.hpp"

using namespace linea;

TEST_CASE("dataset statistics") {
    const std::vector<BuildingRecord> one{make_building(0, geometry::Polygon({{0, 0}, {2, 0}, {2, 3}, {0, 3}}))};
    const auto s = dataset_stats(one);
    CHECK(s.b_count == 1);
    CHECK(s.ave_a == doctest::Approx(6));
    CHECK(s.ave_e == doctest::Approx(4));
    CHECK(s.rate_e_le8 == doctest::Approx(1.0));

    std::vector<geometry::Point> dodecagon;
    for (int k = 0; k < 12; ++k) dodecagon.push_back({50 + 5 * std::cos(k * M_PI / 6), 5 * std::sin(k * M_PI / 6)});
    const std::vector<BuildingRecord> two{one[0], make_building(1, geometry::Polygon(dodecagon))};
    const auto t = dataset_stats(two);
    CHECK(t.ave_e == doctest::Approx(8));
    CHECK(t.rate_e_le8 == doctest::Approx(0.5));
    CHECK_THROWS_AS(dataset_stats(std::vector<BuildingRecord>{}), Error);
}

TEST_CASE("precision and recall") {
    const auto r = pr_from_counts(127, 5, 12);
    CHECK(std::abs(r.precision - 0.96212) <= 1e-5);
    CHECK(std::abs(r.recall - 0.91367) <= 1e-5);
    CHECK(std::abs(r.precision - 127.0 / 132) < 1e-12);
    CHECK(std::abs(r.recall - 127.0 / 139) < 1e-12);
    CHECK(pr_from_counts(0, 0, 0).precision == 0.0);

    const std::vector<IdSet> truth{{1, 2, 3}, {4, 5, 6}};
    const auto same = precision_recall(truth, truth);
    CHECK(same.precision == 1.0);
    CHECK(same.recall == 1.0);

    // Jaccard 4/6 falls short of 0.8.
    const std::vector<IdSet> det{{1, 2, 3, 4, 5}};
    const std::vector<IdSet> tr{{1, 2, 3, 4, 6}};
    CHECK(jaccard(det[0], tr[0]) == doctest::Approx(4.0 / 6));
    const auto j = precision_recall(det, tr, {MatchCriterion::Jaccard, 0.8});
    CHECK(j.tp == 0);
    CHECK(j.fp == 1);
    CHECK(j.fn == 1);
    CHECK(precision_recall(det, tr, {MatchCriterion::Jaccard, 0.6}).tp == 1);
    // Order inside a set does not matter; each truth set is matched once.
    const auto dup = precision_recall(std::vector<IdSet>{{3, 2, 1}, {1, 2, 3}}, truth);
    CHECK(dup.tp == 1);
    CHECK(dup.fp == 1);
    CHECK(dup.fn == 1);
}

TEST_CASE("precision and recall swap with the arguments") {
    testing::Rand r(71);
    auto random_sets = [&](int k) {
        std::vector<IdSet> out;
        for (int i = 0; i < k; ++i) {
            IdSet s;
            const int base = r.integer(0, 30);
            for (int j = 0; j < r.integer(3, 6); ++j) s.push_back(base + j + (r.coin(0.2) ? 1 : 0));
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            out.push_back(s);
        }
        return out;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = random_sets(r.integer(1, 8)), t = random_sets(r.integer(1, 8));
        for (MatchSpec m : {MatchSpec{}, MatchSpec{MatchCriterion::Jaccard, 0.5}}) {
            const auto a = precision_recall(d, t, m), b = precision_recall(t, d, m);
            CHECK(a.tp == b.tp);
            CHECK(a.precision == doctest::Approx(b.recall));
            CHECK(a.recall == doctest::Approx(b.precision));
        }
    }
}

TEST_CASE("synthetic generator") {
    SyntheticSpec spec;
    spec.rows = 1;
    spec.cols = 5;
    const auto d = generate_synthetic(spec);
    CHECK(d.buildings.size() == 5);
    REQUIRE(d.truth.size() == 1);
    CHECK(d.truth[0] == IdSet{0, 1, 2, 3, 4});

    spec.jitter = 2.0;
    spec.seed = 1;
    const auto a = generate_synthetic(spec);
    spec.seed = 2;
    const auto b = generate_synthetic(spec);
    CHECK(a.truth == b.truth);
    CHECK_FALSE(a.buildings[0].centroid == b.buildings[0].centroid);
    spec.seed = 1;
    const auto again = generate_synthetic(spec);
    for (std::size_t i = 0; i < a.buildings.size(); ++i) CHECK(again.buildings[i].centroid == a.buildings[i].centroid);
    // Centres stay within the jitter radius.
    for (std::size_t i = 0; i < a.buildings.size(); ++i) {
        CHECK(geometry::norm(a.buildings[i].centroid - d.buildings[i].centroid) <= 2.0 + 1e-9);
    }

    SyntheticSpec bad;
    bad.spacing = -1;
    CHECK_THROWS_AS(generate_synthetic(bad), Error);
    bad = {};
    bad.building_size = 30;
    CHECK_THROWS_AS(generate_synthetic(bad), Error);
    bad = {};
    bad.jitter = 10;
    CHECK_THROWS_AS(generate_synthetic(bad), Error);
    bad = {};
    bad.rows = 0;
    CHECK_THROWS_AS(generate_synthetic(bad), Error);
}

TEST_CASE("zero-jitter rows with decoys are recognized exactly") {
    for (double rot : {0.0, 33.0}) {
        SyntheticSpec spec;
        spec.rows = 3;
        spec.cols = 10;
        spec.decoys = 5;
        spec.rotation = rot;
        const auto d = generate_synthetic(spec);
        CHECK(d.buildings.size() == 35);
        graph::Graph g = build_kg_precomputed(d.buildings, d.roads, Thresholds{});
        const auto p = recognize_linear_patterns(g, d.buildings, Thresholds{}, Mode::Engine);
        const auto r = precision_recall(p, d.truth);
        CHECK(r.precision == 1.0);
        CHECK(r.recall == 1.0);
    }
}

TEST_CASE("spec for size") {
    for (std::size_t n : {36u, 241u, 685u, 1295u, 3566u}) {
        const auto s = spec_for_size(n);
        CHECK(static_cast<std::size_t>(s.rows * s.cols + s.decoys) == n);
    }
}

TEST_CASE("benchmark reports") {
    const auto syn = generate_synthetic(spec_for_size(60));
    const Dataset d{"small", syn.buildings, syn.roads};
    for (Schema schema : {Schema::A, Schema::B}) {
        for (Method m : {Method::Engine, Method::Baseline}) {
            const auto r = benchmark(d, m, 4, schema);
            CHECK(r.runs == 4);
            CHECK(r.min_t >= 0.0);
            CHECK(r.min_t <= r.ave_t);
            CHECK(r.ave_t <= r.max_t);
            CHECK(r.std_t >= 0.0);
            CHECK(r.v_count == 60);
            CHECK(r.e_count > 0);
            CHECK(r.patterns == syn.truth.size());
            const auto again = benchmark(d, m, 1, schema);
            CHECK(again.std_t == 0.0);
            CHECK(again.v_count == r.v_count);
            CHECK(again.e_count == r.e_count);
        }
    }
    CHECK_THROWS_AS(benchmark(d, Method::Engine, 0, Schema::A), Error);

    std::ostringstream csv;
    write_bench_csv(csv, {BenchRow{"small", Schema::A, Method::Engine, benchmark(d, Method::Engine, 1, Schema::A), 2.5},
                          BenchRow{"small", Schema::A, Method::Baseline, benchmark(d, Method::Baseline, 1, Schema::A), {}}});
    std::istringstream in(csv.str());
    std::string header, engine, base;
    std::getline(in, header);
    std::getline(in, engine);
    std::getline(in, base);
    CHECK(header == "dataset,schema,method,v_count,e_count,runs,min_t,max_t,ave_t,std_t,e_rate");
    CHECK(engine.rfind("small,A,engine,60,", 0) == 0);
    CHECK(engine.substr(engine.rfind(',') + 1) == "2.5000");
    CHECK(base.back() == ',');
}
