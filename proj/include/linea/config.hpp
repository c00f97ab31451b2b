#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "linea/evaluation.hpp"

namespace linea {

struct Config {
    Thresholds thresholds;
    std::optional<int> map_scale;  // scale denominator; sets td when given
    RngMetric rng_metric = RngMetric::Footprint;
    geometry::FrCombine fr_combine = geometry::FrCombine::Max;
    AlignRule align_rule = AlignRule::Listing;
    MatchSpec match;
    Schema schema = Schema::A;
    Mode mode = Mode::Engine;

    [[nodiscard]] RngOptions rng() const { return {false, rng_metric, fr_combine}; }
};

// Keys: delta1..3, eta1..3, td, map_scale, rng_metric (footprint|centroid),
// fr_combine (max|min), align_rule (listing|outer_edges), match_criterion
// (exact|jaccard), jaccard_tau, schema (A|B), mode (engine|direct).
// Unknown keys, wrong types, bad enum names, and td together with map_scale
// throw InvalidConfig; so do thresholds failing validation.
Config config_from_json(const nlohmann::json& j);
Config parse_config(const std::string& text);
nlohmann::json config_to_json(const Config& c);

// Generator spec from JSON with the SyntheticSpec field names; unknown keys
// and wrong types throw InvalidSpec.
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

}  // namespace linea
