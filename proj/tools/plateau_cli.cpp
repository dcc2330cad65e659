// Command-line front end: run | opo | experiment | bounds | verify.
//
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 runtime failure,
// 5 verify failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plateau/config.hpp"
#include "plateau/engine.hpp"
#include "plateau/experiments.hpp"
#include "plateau/theory.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;
constexpr int kExitVerify = 5;

using namespace plateau;

std::string default_output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("PLATEAU_OUTPUT_DIR")) return env;
    return ".";
}

RunRow row_from_result(const EAConfig& cfg, const RunResult& result) {
    RunRow row;
    row.function = cfg.fitness.family() == FitnessFamily::OneMax ? "onemax" : "plateau";
    row.n = cfg.fitness.n();
    row.r = cfg.fitness.r();
    switch (cfg.selection.kind) {
        case SelectionSpec::Kind::FitnessProportionate:
            row.selection_kind = "fprop";
            break;
        case SelectionSpec::Kind::Tournament:
            row.selection_kind = "tournament";
            row.selection_param = cfg.selection.k;
            break;
        case SelectionSpec::Kind::Comma:
            row.selection_kind = "comma";
            row.selection_param = cfg.selection.mu;
            break;
    }
    switch (cfg.mutation.kind) {
        case MutationSpec::Kind::Bitwise:
            row.mutation_kind = "bitwise";
            row.chi = cfg.mutation.chi;
            break;
        case MutationSpec::Kind::Point:
            row.mutation_kind = "point";
            break;
        case MutationSpec::Kind::FlipDistribution:
            row.mutation_kind = "flipdist";
            break;
    }
    row.lambda = cfg.lambda;
    row.seed = cfg.seed;
    row.generations = result.generations;
    row.evaluations = result.evaluations;
    row.success = result.success;
    row.best_fitness = result.best_fitness;
    return row;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& output_dir) {
    auto doc = config::load_json_file(config_path);
    config::apply_overrides(doc, overrides);
    const EAConfig cfg = config::parse_run_config(doc);
    const RunResult result = run_ea(cfg);

    std::cout << kRunCsvHeader << '\n';
    write_run_row(std::cout, row_from_result(cfg, result));

    if (cfg.record_trajectory) {
        namespace fs = std::filesystem;
        const fs::path dir = default_output_dir(output_dir);
        fs::create_directories(dir);
        std::ofstream out(dir / "trajectory.csv", std::ios::binary);
        out << "generation,best_fitness,sum_ones,plateau_count,"
               "max_reproductive_rate,beta_at_gamma0\n";
        for (const auto& rec : result.trajectory)
            out << rec.generation << ',' << rec.best_fitness << ',' << rec.sum_ones << ','
                << rec.plateau_count << ',' << rec.max_reproductive_rate << ','
                << rec.beta_at_gamma0 << '\n';
    }
    return 0;
}

int cmd_opo(const std::string& config_path, const std::vector<std::string>& overrides) {
    auto doc = config::load_json_file(config_path);
    config::apply_overrides(doc, overrides);
    const config::OpoConfig cfg = config::parse_opo_config(doc);
    const RunResult result = run_opo(cfg.fitness, cfg.mutation, cfg.budget, cfg.seed);

    RunRow row;
    row.function = cfg.fitness.family() == FitnessFamily::OneMax ? "onemax" : "plateau";
    row.n = cfg.fitness.n();
    row.r = cfg.fitness.r();
    row.selection_kind = "elitist";
    row.mutation_kind = cfg.mutation.kind == MutationSpec::Kind::Bitwise ? "bitwise"
                        : cfg.mutation.kind == MutationSpec::Kind::Point ? "point"
                                                                         : "flipdist";
    row.chi = cfg.mutation.kind == MutationSpec::Kind::Bitwise ? cfg.mutation.chi : 0.0;
    row.lambda = 1;
    row.seed = cfg.seed;
    row.generations = result.generations;
    row.evaluations = result.evaluations;
    row.success = result.success;
    row.best_fitness = result.best_fitness;
    std::cout << kRunCsvHeader << '\n';
    write_run_row(std::cout, row);
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::vector<std::string>& overrides,
                   const std::string& output_dir) {
    auto doc = config::load_json_file(config_path);
    config::apply_overrides(doc, overrides);
    ExperimentPlan plan = config::parse_experiment_config(doc);
    if (!output_dir.empty()) plan.output_dir = output_dir;
    plan.output_dir = default_output_dir(plan.output_dir);
    const auto summary = run_experiment(plan);
    std::cout << kSummaryCsvHeader << '\n';
    for (const auto& row : summary) write_summary_row(std::cout, row);
    return 0;
}

struct BoundFlags {
    std::string theorem;
    double alpha = 2.0, chi = 1.0, delta = 0.1, gamma0 = 0.25, lambda = 100.0;
    double s_star = 0.1, C = 1.0, epsilon = 0.1, p0 = 0.5, eps_prime = 0.1, p_xi1 = 0.5;
    std::vector<double> s;
    std::size_t m = 2, n = 100;
    int r = 2;
};

int cmd_bounds(const BoundFlags& f) {
    using namespace plateau::theory;
    LevelParams params{f.s, f.p0, f.gamma0, f.delta, f.lambda, f.C};
    if (params.s.empty() && f.m >= 2)
        params.s.assign(f.m - 1, f.s_star);

    nlohmann::json out;
    if (f.theorem == "level-based") {
        out = config::to_json(level_based_bound(params, f.m));
    } else if (f.theorem == "up-drift") {
        out = config::to_json(updrift_bound(params, f.m));
    } else if (f.theorem == "lambda-floor") {
        out = {{"name", "lambda-floor-M4prime"},
               {"value", lambda_floor_M4prime(params, f.m)}};
    } else if (f.theorem == "high-pressure") {
        const auto hp = high_pressure_params(f.m, params.s_star());
        out = {{"name", "high-pressure"},
               {"value", hp.expected_generations},
               {"values", {{"k_min", hp.k_min},
                           {"ratio_min", hp.ratio_min},
                           {"expected_generations", hp.expected_generations}}}};
    } else if (f.theorem == "pressure-floors") {
        const auto pf = theorem3_params(f.n, f.p_xi1);
        out = {{"name", "pressure-floors"},
               {"value", pf.ratio_min},
               {"values", {{"k_min", pf.k_min}, {"ratio_min", pf.ratio_min}}}};
    } else if (f.theorem == "negative-drift") {
        out = config::to_json(negative_drift_report(f.alpha, f.chi, f.delta, f.n));
    } else if (f.theorem == "pk10") {
        const bool holds = pk10_holds(f.alpha, f.chi, f.delta);
        out = {{"name", "pk10"},
               {"value", holds ? 1 : 0},
               {"conditions",
                {{{"name", "alpha_lt_exp_chi_minus_delta"},
                  {"holds", holds},
                  {"margin", std::exp(f.chi) - f.delta - f.alpha}}}}};
    } else if (f.theorem == "approximation") {
        const auto lim = approximation_limits(f.chi, f.epsilon, f.n);
        out = {{"name", "approximation-limits"},
               {"value", lim.z},
               {"values", {{"rho", lim.rho}, {"M", lim.M}, {"z", lim.z},
                           {"w_max", lim.w_max}}}};
    } else if (f.theorem == "fprop-alpha") {
        out = {{"name", "fprop-alpha"},
               {"value", fprop_alpha_bound(f.n, f.r, f.eps_prime)}};
    } else if (f.theorem == "opo-exact") {
        const double exact = opo_exact_expected_runtime(f.n, f.r, MutationSpec::bitwise(f.chi));
        out = {{"name", "opo-exact"}, {"value", exact}};
    } else {
        throw config::ParseError("unknown theorem: " + f.theorem);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

// ---- verify: fast built-in property suite --------------------------------

bool check(const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    return ok;
}

int cmd_verify() {
    bool all = true;
    RandomSource rng(20240817);

    {  // hamming is a metric, transforms preserve it
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            const std::size_t n = 1 + rng.uniform_below(64);
            const auto x = Bitstring::random(n, rng);
            const auto y = Bitstring::random(n, rng);
            const auto z = Bitstring::random(n, rng);
            ok = hamming(x, y) == hamming(y, x) &&
                 (hamming(x, y) != 0 || x == y) &&
                 hamming(x, z) <= hamming(x, y) + hamming(y, z);
            const auto t = InstanceTransform::random(n, rng);
            ok = ok && hamming(apply_transform(t, x), apply_transform(t, y)) == hamming(x, y);
        }
        all &= check("hamming metric + transform isometry", ok);
    }
    {  // selection models: normalization and sampling frequencies
        const std::vector<int> fitnesses = {7, 5, 5, 1};
        bool ok = true;
        for (const auto& spec : {SelectionSpec::fitness_proportionate(),
                                 SelectionSpec::tournament(3), SelectionSpec::comma(2)}) {
            const auto dist = selection_distribution(spec, fitnesses);
            double sum = 0.0;
            for (double p : dist) sum += p;
            ok = ok && std::abs(sum - 1.0) < 1e-12;
            ok = ok && chi_square_selection_test(spec, fitnesses, 100000, rng) > 1e-3;
        }
        all &= check("selection distributions + chi-square", ok);
    }
    {  // unbiasedness at n = 5
        bool ok = true;
        const auto x = Bitstring::from_string("10110");
        for (const auto& spec : {MutationSpec::bitwise(1.0), MutationSpec::point(),
                                 MutationSpec::flip_distribution({0.5, 0.5})}) {
            const auto base = exact_offspring_distribution(spec, x);
            for (int t = 0; t < 5 && ok; ++t) {
                const auto tf = InstanceTransform::random(5, rng);
                const auto mapped = exact_offspring_distribution(spec, apply_transform(tf, x));
                for (const auto& [y, p] : base) {
                    const auto it = mapped.find(apply_transform(tf, y));
                    if (it == mapped.end() || std::abs(it->second - p) > 1e-12) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        all &= check("mutation unbiasedness (n=5)", ok);
    }
    {  // drift inequality, small setting
        const auto report = drift_probe(50, 8, 1.0, 10, 2000, rng);
        all &= check("drift inequality probe", !report.any_flagged);
    }
    {  // engine determinism
        const EAConfig cfg{.fitness = FitnessSpec::plateau(20, 2),
                           .selection = SelectionSpec::tournament(3),
                           .mutation = MutationSpec::bitwise(1.0),
                           .lambda = 16,
                           .budget = 20000,
                           .seed = 7};
        const auto a = run_ea(cfg);
        const auto b = run_ea(cfg);
        all &= check("run_ea determinism",
                     a.success == b.success && a.evaluations == b.evaluations &&
                         a.best_fitness == b.best_fitness);
    }
    {  // bound calculators against frozen arithmetic
        using namespace plateau::theory;
        const auto rel_ok = [](double v, double expected) {
            return std::abs(v - expected) <= 1e-9 * std::abs(expected);
        };
        LevelParams lp{{0.1}, 0.5, 0.1, 1.0, 100.0, 1.0};
        bool ok = rel_ok(level_based_bound(lp, 2).value, 46.299933942256368);
        const auto nd = negative_drift_report(2.0, 1.0, 0.01, 100);
        ok = ok && rel_ok(nd.values[0].second, 0.70314718055994531);
        ok = ok && rel_ok(fprop_alpha_bound(100, 2, 0.1), 2.2675736961451247);
        all &= check("bound calculators (frozen values)", ok);
    }

    return all ? 0 : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation lab for non-elitist evolutionary algorithms on plateau "
                 "fitness functions"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_dir;

    auto* run = app.add_subcommand("run", "One seeded EA run; CSV row on stdout");
    run->add_option("--config", config_path, "Run config (JSON)")->required();
    run->add_option("--override", overrides, "key.path=value overrides");
    run->add_option("--output", output_dir, "Output directory for the trajectory CSV");

    auto* opo = app.add_subcommand("opo", "One seeded (1+1) EA run; CSV row on stdout");
    opo->add_option("--config", config_path, "Opo config (JSON)")->required();
    opo->add_option("--override", overrides, "key.path=value overrides");

    auto* experiment = app.add_subcommand("experiment", "Replicated runs; CSVs on disk");
    experiment->add_option("--config", config_path, "Experiment plan (JSON)")->required();
    experiment->add_option("--override", overrides, "key.path=value overrides");
    experiment->add_option("--output", output_dir, "Output directory (overrides plan)");

    BoundFlags flags;
    auto* bounds = app.add_subcommand("bounds", "Evaluate a bound/condition; JSON on stdout");
    bounds->add_option("--theorem", flags.theorem,
                       "level-based | up-drift | lambda-floor | high-pressure | "
                       "pressure-floors | negative-drift | pk10 | approximation | "
                       "fprop-alpha | opo-exact")
        ->required();
    bounds->add_option("--alpha", flags.alpha, "Reproductive rate bound");
    bounds->add_option("--chi", flags.chi, "Bitwise mutation parameter");
    bounds->add_option("--delta", flags.delta, "Slack constant");
    bounds->add_option("--gamma0", flags.gamma0, "Level occupation fraction");
    bounds->add_option("--lambda", flags.lambda, "Population size");
    bounds->add_option("--s", flags.s, "Per-level upgrade probabilities s_1..s_{m-1}");
    bounds->add_option("--s-star", flags.s_star, "Minimal upgrade probability");
    bounds->add_option("--m", flags.m, "Level count");
    bounds->add_option("--n", flags.n, "Problem size");
    bounds->add_option("--r", flags.r, "Plateau radius");
    bounds->add_option("--C", flags.C, "Constant in (M4')");
    bounds->add_option("--epsilon", flags.epsilon, "Constant in z(eps)");
    bounds->add_option("--p0", flags.p0, "No-degradation probability");
    bounds->add_option("--eps-prime", flags.eps_prime, "Constant in the alpha bound");
    bounds->add_option("--p-xi1", flags.p_xi1, "Pr(xi = 1)");

    auto* verify = app.add_subcommand("verify", "Built-in property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, overrides, output_dir);
        if (opo->parsed()) return cmd_opo(config_path, overrides);
        if (experiment->parsed()) return cmd_experiment(config_path, overrides, output_dir);
        if (bounds->parsed()) return cmd_bounds(flags);
        if (verify->parsed()) return cmd_verify();
    } catch (const plateau::config::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const plateau::config::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitParse;
}
