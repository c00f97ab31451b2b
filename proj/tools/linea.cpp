// linea: linear building pattern recognition from the command line.
#include <algorithm>
#include <cstdlib>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "linea/baseline.hpp"
#include "linea/config.hpp"
#include "linea/cypher/parser.hpp"
#include "linea/error.hpp"
#include "linea/evaluation.hpp"
#include "linea/io.hpp"
#include "linea/rules.hpp"

namespace {

using namespace linea;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 2, kFormat = 3, kInternal = 4 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidConfig:
        case ErrorKind::InvalidSpec:
        case ErrorKind::IoError: return kUsage;
        case ErrorKind::FormatError:
        case ErrorKind::ParseError:
        case ErrorKind::DegeneratePolygon:
        case ErrorKind::EmptyDataset: return kFormat;
        default: return kInternal;
    }
}

json read_json(const std::string& path, ErrorKind on_error) {
    try {
        return json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw Error(on_error, "'" + path + "' is not valid JSON: " + e.what());
    }
}

// Config file, then command-line overrides, both as JSON so that one
// validator covers them.
struct ConfigFlags {
    std::string path;
    std::map<std::string, double> numbers;
    std::optional<int> map_scale;
    std::map<std::string, std::string> names;

    void add_to(CLI::App& app) {
        app.add_option("--config", path, "JSON config file (default: $LINEA_CONFIG)");
        for (const char* key : {"delta1", "delta2", "delta3", "eta1", "eta2", "eta3", "td", "jaccard_tau"}) {
            app.add_option_function<double>(std::string("--") + key, [this, key](double v) { numbers[key] = v; },
                                            std::string("override ") + key);
        }
        app.add_option_function<int>("--map-scale", [this](int v) { map_scale = v; }, "scale denominator; sets td");
        for (const char* key : {"rng_metric", "fr_combine", "align_rule", "match_criterion", "schema", "mode"}) {
            std::string flag = std::string("--") + key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            app.add_option_function<std::string>(flag, [this, key](const std::string& v) { names[key] = v; },
                                                 std::string("override ") + key);
        }
    }

    [[nodiscard]] Config load() const {
        std::string file = path;
        if (file.empty()) {
            if (const char* env = std::getenv("LINEA_CONFIG"); env && *env) file = env;
        }
        json j = json::object();
        if (!file.empty()) {
            j = read_json(file, ErrorKind::InvalidConfig);
            if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
        }
        for (const auto& [k, v] : numbers) {
            j[k] = v;
            if (k == "td") j.erase("map_scale");
        }
        if (map_scale) {
            j["map_scale"] = *map_scale;
            if (!numbers.count("td")) j.erase("td");
        }
        for (const auto& [k, v] : names) j[k] = v;
        return config_from_json(j);
    }
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_file(path, text);
    }
}

io::GeoData load_input(const std::string& input, const std::string& roads) {
    io::GeoData d = io::read_geojson(input);
    if (!roads.empty()) {
        io::GeoData r = io::read_geojson(roads);
        if (!r.buildings.empty()) throw Error(ErrorKind::FormatError, "the roads file contains polygons");
        d.roads.insert(d.roads.end(), r.roads.begin(), r.roads.end());
    }
    return d;
}

std::vector<LinearPattern> recognize(const io::GeoData& d, const Config& c) {
    if (d.buildings.empty()) throw Error(ErrorKind::EmptyDataset, "no buildings");
    graph::Graph g = c.schema == Schema::A ? build_kg_precomputed(d.buildings, d.roads, c.thresholds, c.rng())
                                           : build_kg_attributes(d.buildings, d.roads, c.rng());
    RecognizeOptions ro;
    ro.align = c.align_rule;
    return recognize_linear_patterns(g, d.buildings, c.thresholds, c.mode, ro);
}

json pr_json(const PRReport& r) {
    return json{{"tp", r.tp}, {"fp", r.fp}, {"fn", r.fn}, {"precision", r.precision}, {"recall", r.recall}};
}

std::vector<BenchRow> bench_dataset(const Dataset& d, const Config& c, int runs) {
    BenchOptions opt{c.thresholds, c.rng(), c.align_rule};
    const BenchReport engine = benchmark(d, Method::Engine, runs, c.schema, opt);
    const BenchReport base = benchmark(d, Method::Baseline, runs, c.schema, opt);
    std::vector<BenchRow> rows;
    rows.push_back({d.name, c.schema, Method::Engine, engine, base.ave_t / engine.ave_t});
    rows.push_back({d.name, c.schema, Method::Baseline, base, std::nullopt});
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"Linear building pattern recognition over a spatial knowledge graph"};
    app.require_subcommand(1);

    std::string input;
    std::string roads;
    std::string out;
    std::string svg;
    ConfigFlags flags;

    auto* stats = app.add_subcommand("stats", "dataset statistics as JSON");
    stats->add_option("input", input, "buildings GeoJSON")->required();

    auto* rec = app.add_subcommand("recognize", "write recognized patterns as GeoJSON");
    rec->add_option("input", input, "buildings GeoJSON")->required();
    rec->add_option("--roads", roads, "extra roads GeoJSON");
    rec->add_option("-o,--out", out, "output GeoJSON (default stdout)");
    rec->add_option("--svg", svg, "also write an SVG overlay");
    rec->add_flag("--crs-note", "coordinates are taken as planar meters; no reprojection is done");
    flags.add_to(*rec);

    int runs = 10;
    std::string gen_spec;
    bool sweep = false;
    std::uint64_t seed = 1;
    auto* bench = app.add_subcommand("bench", "time engine against baseline, CSV out");
    bench->add_option("input", input, "buildings GeoJSON");
    bench->add_option("--gen", gen_spec, "generator spec JSON instead of an input file");
    bench->add_flag("--sweep", sweep, "generated sizes 36, 241, 685, 1295, 3566");
    bench->add_option("--seed", seed, "seed for --sweep");
    bench->add_option("--runs", runs, "timed runs per method")->check(CLI::PositiveNumber);
    bench->add_option("-o,--out", out, "output CSV (default stdout)");
    flags.add_to(*bench);

    std::string truth;
    std::vector<std::size_t> counts;
    auto* eval = app.add_subcommand("eval", "precision and recall as JSON");
    eval->add_option("detected", input, "patterns GeoJSON from recognize");
    eval->add_option("truth", truth, "truth JSON: array of id arrays");
    eval->add_option("--counts", counts, "tp fp fn instead of files")->expected(3);
    flags.add_to(*eval);

    std::string truth_out;
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    gen->add_option("spec", gen_spec, "generator spec JSON")->required();
    gen->add_option("-o,--out", out, "buildings GeoJSON (default stdout)");
    gen->add_option("--truth", truth_out, "truth JSON");

    std::string script;
    auto* rules = app.add_subcommand("rules", "rule script tools");
    rules->require_subcommand(1);
    auto* check = rules->add_subcommand("check", "parse and validate a script");
    check->add_option("script", script, "script file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*stats) {
        const auto d = io::read_geojson(input);
        const DatasetStats s = dataset_stats(d.buildings);
        std::cout << json{{"b_count", s.b_count}, {"ave_a", s.ave_a}, {"ave_e", s.ave_e}, {"rate_e_le8", s.rate_e_le8}}.dump(2)
                  << "\n";
    } else if (*rec) {
        const Config c = flags.load();
        const auto d = load_input(input, roads);
        const auto patterns = recognize(d, c);
        write_output(out, io::patterns_geojson(patterns, d.buildings));
        if (!svg.empty()) io::write_file(svg, io::svg_overlay(d.buildings, d.roads, patterns));
    } else if (*bench) {
        const int sources = !input.empty() + !gen_spec.empty() + sweep;
        if (sources != 1) {
            std::cerr << "bench: give exactly one of an input file, --gen, or --sweep\n";
            return kUsage;
        }
        const Config c = flags.load();
        std::vector<BenchRow> rows;
        if (sweep) {
            for (std::size_t n : {36u, 241u, 685u, 1295u, 3566u}) {
                const auto s = generate_synthetic(spec_for_size(n, seed));
                const Dataset d{fmt::format("synthetic_{}", n), s.buildings, s.roads};
                for (auto& r : bench_dataset(d, c, runs)) rows.push_back(std::move(r));
            }
        } else if (!gen_spec.empty()) {
            const auto s = generate_synthetic(synthetic_spec_from_json(read_json(gen_spec, ErrorKind::InvalidSpec)));
            for (auto& r : bench_dataset({"generated", s.buildings, s.roads}, c, runs)) rows.push_back(std::move(r));
        } else {
            const auto d = io::read_geojson(input);
            for (auto& r : bench_dataset({input, d.buildings, d.roads}, c, runs)) rows.push_back(std::move(r));
        }
        std::ostringstream csv;
        write_bench_csv(csv, rows);
        write_output(out, csv.str());
    } else if (*eval) {
        PRReport r;
        if (!counts.empty()) {
            if (!input.empty() || !truth.empty()) {
                std::cerr << "eval: give files or --counts, not both\n";
                return kUsage;
            }
            r = pr_from_counts(counts[0], counts[1], counts[2]);
        } else {
            if (input.empty() || truth.empty()) {
                std::cerr << "eval: need a detected file and a truth file\n";
                return kUsage;
            }
            const Config c = flags.load();
            r = precision_recall(io::parse_patterns_geojson(io::read_file(input)),
                                 io::parse_truth_json(io::read_file(truth)), c.match);
        }
        std::cout << pr_json(r).dump(2) << "\n";
    } else if (*gen) {
        const auto s = generate_synthetic(synthetic_spec_from_json(read_json(gen_spec, ErrorKind::InvalidSpec)));
        write_output(out, io::buildings_geojson(s.buildings, s.roads));
        if (!truth_out.empty()) io::write_file(truth_out, io::truth_json(s.truth));
    } else if (*check) {
        // Threshold placeholders are filled with the defaults before parsing.
        const auto parsed = cypher::parse(instantiate_rules(io::read_file(script), Thresholds{}));
        std::cout << fmt::format("ok: {} statement(s)\n", parsed.statements.size());
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const linea::cypher::ParseError& e) {
        std::cerr << "linea: " << e.what() << "\n";
        return kFormat;
    } catch (const linea::Error& e) {
        std::cerr << "linea: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "linea: internal error: " << e.what() << "\n";
        return kInternal;
    }
}
