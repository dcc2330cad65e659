#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "plateau/engine.hpp"
#include "plateau/experiments.hpp"
#include "plateau/theory.hpp"

namespace plateau::config {

/// Malformed JSON or an unknown/mistyped key. CLI exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed config violating a documented invariant. CLI exit code 3.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json load_json_file(const std::string& path);

/// Apply "dotted.path=value" overrides; every path must already exist.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

EAConfig parse_run_config(const nlohmann::json& doc);
ExperimentPlan parse_experiment_config(const nlohmann::json& doc);

/// The opo schema: fitness, mutation, budget, seed.
struct OpoConfig {
    FitnessSpec fitness;
    MutationSpec mutation;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
};
OpoConfig parse_opo_config(const nlohmann::json& doc);

nlohmann::json to_json(const EAConfig& config);
nlohmann::json to_json(const ExperimentPlan& plan);
nlohmann::json to_json(const theory::BoundReport& report);

} // namespace plateau::config
