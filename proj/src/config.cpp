#include "linea/config.hpp"

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "linea/error.hpp"

namespace linea {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

double number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) bad(key + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) bad(key + " must be finite");
    return d;
}

template <class E>
E choice(const nlohmann::json& v, const std::string& key, const std::map<std::string, E>& names) {
    if (!v.is_string()) bad(key + " must be a string");
    const auto it = names.find(v.get<std::string>());
    if (it == names.end()) bad("unknown " + key + " '" + v.get<std::string>() + "'");
    return it->second;
}

template <class E>
std::string name_of(E value, const std::map<std::string, E>& names) {
    for (const auto& [n, e] : names)
        if (e == value) return n;
    return {};
}

const std::map<std::string, RngMetric> kMetrics{{"footprint", RngMetric::Footprint}, {"centroid", RngMetric::Centroid}};
const std::map<std::string, geometry::FrCombine> kCombine{{"max", geometry::FrCombine::Max},
                                                          {"min", geometry::FrCombine::Min}};
const std::map<std::string, AlignRule> kAlign{{"listing", AlignRule::Listing}, {"outer_edges", AlignRule::OuterEdges}};
const std::map<std::string, MatchCriterion> kMatch{{"exact", MatchCriterion::Exact},
                                                   {"jaccard", MatchCriterion::Jaccard}};
const std::map<std::string, Schema> kSchema{{"A", Schema::A}, {"B", Schema::B}};
const std::map<std::string, Mode> kMode{{"engine", Mode::Engine}, {"direct", Mode::Direct}};

}  // namespace

Config config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad("config must be a JSON object");
    Config c;
    Thresholds& t = c.thresholds;
    const std::map<std::string, double*> thresholds{{"delta1", &t.delta1}, {"delta2", &t.delta2},
                                                    {"delta3", &t.delta3}, {"eta1", &t.eta1},
                                                    {"eta2", &t.eta2},     {"eta3", &t.eta3},
                                                    {"td", &t.td}};
    for (const auto& [key, v] : j.items()) {
        if (const auto it = thresholds.find(key); it != thresholds.end()) {
            *it->second = number(v, key);
        } else if (key == "map_scale") {
            if (!v.is_number_integer() || v.get<long long>() <= 0) bad("map_scale must be a positive integer");
            c.map_scale = v.get<int>();
        } else if (key == "rng_metric") {
            c.rng_metric = choice(v, key, kMetrics);
        } else if (key == "fr_combine") {
            c.fr_combine = choice(v, key, kCombine);
        } else if (key == "align_rule") {
            c.align_rule = choice(v, key, kAlign);
        } else if (key == "match_criterion") {
            c.match.kind = choice(v, key, kMatch);
        } else if (key == "jaccard_tau") {
            c.match.tau = number(v, key);
            if (!(c.match.tau > 0.0 && c.match.tau <= 1.0)) bad("jaccard_tau must be in (0,1]");
        } else if (key == "schema") {
            c.schema = choice(v, key, kSchema);
        } else if (key == "mode") {
            c.mode = choice(v, key, kMode);
        } else {
            bad("unknown key '" + key + "'");
        }
    }
    if (c.map_scale) {
        if (j.contains("td")) bad("give either td or map_scale, not both");
        t.td = Thresholds::td_for_scale(*c.map_scale);
    }
    t.validate();
    return c;
}

Config parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

nlohmann::json config_to_json(const Config& c) {
    const Thresholds& t = c.thresholds;
    nlohmann::json j{{"delta1", t.delta1},
                     {"delta2", t.delta2},
                     {"delta3", t.delta3},
                     {"eta1", t.eta1},
                     {"eta2", t.eta2},
                     {"eta3", t.eta3},
                     {"rng_metric", name_of(c.rng_metric, kMetrics)},
                     {"fr_combine", name_of(c.fr_combine, kCombine)},
                     {"align_rule", name_of(c.align_rule, kAlign)},
                     {"match_criterion", name_of(c.match.kind, kMatch)},
                     {"jaccard_tau", c.match.tau},
                     {"schema", name_of(c.schema, kSchema)},
                     {"mode", name_of(c.mode, kMode)}};
    if (c.map_scale) {
        j["map_scale"] = *c.map_scale;
    } else {
        j["td"] = t.td;
    }
    return j;
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); };
    if (!j.is_object()) fail("generator spec must be a JSON object");
    SyntheticSpec s;
    auto integer = [&](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number_integer()) fail(key + " must be an integer");
        return v.get<long long>();
    };
    auto real = [&](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) fail(key + " must be a number");
        return v.get<double>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "rows") {
            s.rows = static_cast<int>(integer(v, key));
        } else if (key == "cols") {
            s.cols = static_cast<int>(integer(v, key));
        } else if (key == "decoys") {
            s.decoys = static_cast<int>(integer(v, key));
        } else if (key == "seed") {
            if (!v.is_number_unsigned()) fail("seed must be a non-negative integer");
            s.seed = v.get<std::uint64_t>();
        } else if (key == "spacing") {
            s.spacing = real(v, key);
        } else if (key == "jitter") {
            s.jitter = real(v, key);
        } else if (key == "rotation") {
            s.rotation = real(v, key);
        } else if (key == "building_size") {
            s.building_size = real(v, key);
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    return s;
}

}  // namespace linea
