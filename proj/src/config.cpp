#include "plateau/config.hpp"

#include <fstream>
#include <set>

namespace plateau::config {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed,
                const std::set<std::string>& required) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key))
            throw ParseError(where + ": unknown key '" + key + "'");
    for (const auto& key : required)
        if (!obj.contains(key))
            throw ParseError(where + ": missing required key '" + key + "'");
}

template <typename T>
T get_as(const json& obj, const std::string& where, const std::string& key) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + "." + key + ": " + e.what());
    }
}

InstanceTransform parse_transform(const json& obj, std::size_t n) {
    check_keys(obj, "transform", {"mask", "permutation"}, {"mask", "permutation"});
    const auto mask_str = get_as<std::string>(obj, "transform", "mask");
    const auto perm = get_as<std::vector<std::uint32_t>>(obj, "transform", "permutation");
    try {
        Bitstring mask = Bitstring::from_string(mask_str);
        if (mask.size() != n || perm.size() != n)
            throw ValidationError("transform: mask/permutation must have length n");
        return InstanceTransform(std::move(mask), perm);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("transform: ") + e.what());
    }
}

FitnessSpec parse_fitness(const json& obj) {
    check_keys(obj, "fitness", {"family", "n", "r", "transform"}, {"family", "n"});
    const auto family = get_as<std::string>(obj, "fitness", "family");
    const auto n = get_as<std::size_t>(obj, "fitness", "n");
    std::optional<InstanceTransform> transform;
    if (obj.contains("transform")) transform = parse_transform(obj.at("transform"), n);
    try {
        if (family == "onemax") {
            if (obj.contains("r")) throw ValidationError("fitness: onemax takes no r");
            return FitnessSpec::onemax(n, std::move(transform));
        }
        if (family == "plateau") {
            if (!obj.contains("r")) throw ParseError("fitness: plateau requires r");
            return FitnessSpec::plateau(n, get_as<int>(obj, "fitness", "r"),
                                        std::move(transform));
        }
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("fitness: ") + e.what());
    }
    throw ParseError("fitness.family: expected 'onemax' or 'plateau'");
}

SelectionSpec parse_selection(const json& obj) {
    check_keys(obj, "selection", {"kind", "k", "mu"}, {"kind"});
    const auto kind = get_as<std::string>(obj, "selection", "kind");
    try {
        if (kind == "fprop") {
            if (obj.size() != 1) throw ParseError("selection: fprop takes no parameters");
            return SelectionSpec::fitness_proportionate();
        }
        if (kind == "tournament") {
            if (!obj.contains("k")) throw ParseError("selection: tournament requires k");
            if (obj.contains("mu")) throw ParseError("selection: tournament takes no mu");
            return SelectionSpec::tournament(get_as<int>(obj, "selection", "k"));
        }
        if (kind == "comma") {
            if (!obj.contains("mu")) throw ParseError("selection: comma requires mu");
            if (obj.contains("k")) throw ParseError("selection: comma takes no k");
            return SelectionSpec::comma(get_as<int>(obj, "selection", "mu"));
        }
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("selection: ") + e.what());
    }
    throw ParseError("selection.kind: expected 'fprop', 'tournament' or 'comma'");
}

MutationSpec parse_mutation(const json& obj) {
    check_keys(obj, "mutation", {"kind", "chi", "pmf"}, {"kind"});
    const auto kind = get_as<std::string>(obj, "mutation", "kind");
    try {
        if (kind == "bitwise") {
            if (!obj.contains("chi")) throw ParseError("mutation: bitwise requires chi");
            return MutationSpec::bitwise(get_as<double>(obj, "mutation", "chi"));
        }
        if (kind == "point") {
            if (obj.size() != 1) throw ParseError("mutation: point takes no parameters");
            return MutationSpec::point();
        }
        if (kind == "flipdist") {
            return MutationSpec::flip_distribution(
                obj.contains("pmf") ? get_as<std::vector<double>>(obj, "mutation", "pmf")
                                    : std::vector<double>{});
        }
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("mutation: ") + e.what());
    }
    throw ParseError("mutation.kind: expected 'bitwise', 'point' or 'flipdist'");
}

LambdaRule parse_lambda(const json& value) {
    if (value.is_number_unsigned() || value.is_number_integer()) {
        const auto lambda = value.get<long long>();
        if (lambda < 1) throw ValidationError("lambda: lambda >= 1");
        return LambdaRule::fixed_size(static_cast<std::size_t>(lambda));
    }
    check_keys(value, "lambda", {"rule", "coeff"}, {"rule"});
    const auto rule = get_as<std::string>(value, "lambda", "rule");
    if (rule == "ceil_log")
        return LambdaRule::ceil_log(value.contains("coeff")
                                        ? get_as<double>(value, "lambda", "coeff")
                                        : 20.0);
    if (rule == "ceil_n2_log") {
        if (value.contains("coeff")) throw ParseError("lambda: ceil_n2_log takes no coeff");
        return LambdaRule::ceil_n2_log();
    }
    throw ParseError("lambda.rule: expected 'ceil_log' or 'ceil_n2_log'");
}

BudgetPolicy parse_budget(const json& value) {
    if (value.is_number_unsigned() || value.is_number_integer()) {
        const auto evals = value.get<long long>();
        if (evals < 1) throw ValidationError("budget: must be positive");
        return BudgetPolicy::fixed_evals(static_cast<std::uint64_t>(evals));
    }
    check_keys(value, "budget", {"policy", "coeff", "exponent"},
               {"policy", "coeff", "exponent"});
    if (get_as<std::string>(value, "budget", "policy") != "poly")
        throw ParseError("budget.policy: expected 'poly'");
    const auto coeff = get_as<double>(value, "budget", "coeff");
    const auto exponent = get_as<double>(value, "budget", "exponent");
    if (coeff <= 0.0) throw ValidationError("budget.coeff: must be positive");
    return BudgetPolicy::polynomial(coeff, exponent);
}

json transform_to_json(const InstanceTransform& t) {
    return {{"mask", t.mask.to_string()}, {"permutation", t.permutation}};
}

json fitness_to_json(const FitnessSpec& f) {
    json obj = {{"family", f.family() == FitnessFamily::OneMax ? "onemax" : "plateau"},
                {"n", f.n()}};
    if (f.family() == FitnessFamily::Plateau) obj["r"] = f.r();
    if (f.transform()) obj["transform"] = transform_to_json(*f.transform());
    return obj;
}

json selection_to_json(const SelectionSpec& s) {
    switch (s.kind) {
        case SelectionSpec::Kind::FitnessProportionate: return {{"kind", "fprop"}};
        case SelectionSpec::Kind::Tournament: return {{"kind", "tournament"}, {"k", s.k}};
        case SelectionSpec::Kind::Comma: return {{"kind", "comma"}, {"mu", s.mu}};
    }
    throw std::logic_error("selection_to_json: unknown kind");
}

json mutation_to_json(const MutationSpec& m) {
    switch (m.kind) {
        case MutationSpec::Kind::Bitwise: return {{"kind", "bitwise"}, {"chi", m.chi}};
        case MutationSpec::Kind::Point: return {{"kind", "point"}};
        case MutationSpec::Kind::FlipDistribution:
            return {{"kind", "flipdist"}, {"pmf", m.pmf}};
    }
    throw std::logic_error("mutation_to_json: unknown kind");
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
    for (const auto& entry : overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ParseError("override '" + entry + "': expected key.path=value");
        const std::string path = entry.substr(0, eq);
        const std::string raw = entry.substr(eq + 1);

        json* node = &doc;
        std::size_t start = 0;
        std::vector<std::string> keys;
        while (true) {
            const auto dot = path.find('.', start);
            keys.push_back(path.substr(start, dot - start));
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
            if (!node->is_object() || !node->contains(keys[i]))
                throw ParseError("override '" + entry + "': no such key '" + keys[i] + "'");
            node = &(*node)[keys[i]];
        }
        if (!node->is_object() || !node->contains(keys.back()))
            throw ParseError("override '" + entry + "': no such key '" + keys.back() + "'");
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;  // unquoted strings pass through verbatim
        }
        (*node)[keys.back()] = std::move(value);
    }
}

EAConfig parse_run_config(const json& doc) {
    check_keys(doc, "run config",
               {"fitness", "selection", "mutation", "lambda", "budget", "seed",
                "record_trajectory", "trajectory_stride", "gamma0"},
               {"fitness", "selection", "mutation", "lambda", "budget", "seed"});
    const auto lambda = get_as<long long>(doc, "run config", "lambda");
    if (lambda < 1) throw ValidationError("run config: lambda >= 1");
    EAConfig cfg{
        .fitness = parse_fitness(doc.at("fitness")),
        .selection = parse_selection(doc.at("selection")),
        .mutation = parse_mutation(doc.at("mutation")),
        .lambda = static_cast<std::size_t>(lambda),
        .budget = get_as<std::uint64_t>(doc, "run config", "budget"),
        .seed = get_as<std::uint64_t>(doc, "run config", "seed"),
    };
    if (doc.contains("record_trajectory"))
        cfg.record_trajectory = get_as<bool>(doc, "run config", "record_trajectory");
    if (doc.contains("trajectory_stride"))
        cfg.trajectory_stride = get_as<std::uint64_t>(doc, "run config", "trajectory_stride");
    if (doc.contains("gamma0")) cfg.gamma0 = get_as<double>(doc, "run config", "gamma0");
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return cfg;
}

OpoConfig parse_opo_config(const json& doc) {
    check_keys(doc, "opo config", {"fitness", "mutation", "budget", "seed"},
               {"fitness", "mutation", "budget", "seed"});
    OpoConfig cfg{
        .fitness = parse_fitness(doc.at("fitness")),
        .mutation = parse_mutation(doc.at("mutation")),
        .budget = get_as<std::uint64_t>(doc, "opo config", "budget"),
        .seed = get_as<std::uint64_t>(doc, "opo config", "seed"),
    };
    if (cfg.budget < 1) throw ValidationError("opo config: budget >= 1");
    try {
        cfg.mutation.validate(cfg.fitness.n());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return cfg;
}

ExperimentPlan parse_experiment_config(const json& doc) {
    check_keys(doc, "experiment config",
               {"fitness", "selection", "mutation", "lambda", "budget", "n_grid",
                "replications", "base_seed", "output", "threads"},
               {"fitness", "selection", "mutation", "lambda", "budget", "n_grid",
                "replications", "base_seed"});

    const json& fitness = doc.at("fitness");
    check_keys(fitness, "fitness", {"family", "r"}, {"family"});
    const auto family_name = get_as<std::string>(fitness, "fitness", "family");
    if (family_name != "onemax" && family_name != "plateau")
        throw ParseError("fitness.family: expected 'onemax' or 'plateau'");

    ExperimentPlan plan;
    plan.family = family_name == "onemax" ? FitnessFamily::OneMax : FitnessFamily::Plateau;
    if (plan.family == FitnessFamily::Plateau) {
        if (!fitness.contains("r")) throw ParseError("fitness: plateau requires r");
        plan.r = get_as<int>(fitness, "fitness", "r");
    } else if (fitness.contains("r")) {
        throw ValidationError("fitness: onemax takes no r");
    }
    plan.selection = parse_selection(doc.at("selection"));
    plan.mutation = parse_mutation(doc.at("mutation"));
    plan.lambda = parse_lambda(doc.at("lambda"));
    plan.budget = parse_budget(doc.at("budget"));
    plan.n_grid = get_as<std::vector<std::size_t>>(doc, "experiment config", "n_grid");
    plan.replications = get_as<std::size_t>(doc, "experiment config", "replications");
    plan.base_seed = get_as<std::uint64_t>(doc, "experiment config", "base_seed");
    if (doc.contains("output"))
        plan.output_dir = get_as<std::string>(doc, "experiment config", "output");
    if (doc.contains("threads"))
        plan.threads = get_as<std::size_t>(doc, "experiment config", "threads");
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return plan;
}

json to_json(const EAConfig& config) {
    return {{"fitness", fitness_to_json(config.fitness)},
            {"selection", selection_to_json(config.selection)},
            {"mutation", mutation_to_json(config.mutation)},
            {"lambda", config.lambda},
            {"budget", config.budget},
            {"seed", config.seed},
            {"record_trajectory", config.record_trajectory},
            {"trajectory_stride", config.trajectory_stride},
            {"gamma0", config.gamma0}};
}

json to_json(const ExperimentPlan& plan) {
    json fitness = {{"family", plan.family == FitnessFamily::OneMax ? "onemax" : "plateau"}};
    if (plan.family == FitnessFamily::Plateau) fitness["r"] = plan.r;

    json lambda;
    switch (plan.lambda.kind) {
        case LambdaRule::Kind::Fixed: lambda = plan.lambda.fixed; break;
        case LambdaRule::Kind::CeilLog:
            lambda = {{"rule", "ceil_log"}, {"coeff", plan.lambda.coeff}};
            break;
        case LambdaRule::Kind::CeilN2Log: lambda = {{"rule", "ceil_n2_log"}}; break;
    }
    json budget;
    if (plan.budget.kind == BudgetPolicy::Kind::Fixed) budget = plan.budget.fixed;
    else
        budget = {{"policy", "poly"}, {"coeff", plan.budget.coeff},
                  {"exponent", plan.budget.exponent}};

    return {{"fitness", std::move(fitness)},
            {"selection", selection_to_json(plan.selection)},
            {"mutation", mutation_to_json(plan.mutation)},
            {"lambda", std::move(lambda)},
            {"budget", std::move(budget)},
            {"n_grid", plan.n_grid},
            {"replications", plan.replications},
            {"base_seed", plan.base_seed},
            {"output", plan.output_dir},
            {"threads", plan.threads}};
}

json to_json(const theory::BoundReport& report) {
    json values = json::object();
    for (const auto& [name, value] : report.values) values[name] = value;
    json conditions = json::array();
    for (const auto& c : report.conditions)
        conditions.push_back({{"name", c.name}, {"holds", c.holds}, {"margin", c.margin}});
    return {{"name", report.name},
            {"value", report.value},
            {"values", std::move(values)},
            {"conditions", std::move(conditions)}};
}

} // namespace plateau::config
