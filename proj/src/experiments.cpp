#include "plateau/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace plateau {

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string selection_kind_name(const SelectionSpec& s) {
    switch (s.kind) {
        case SelectionSpec::Kind::FitnessProportionate: return "fprop";
        case SelectionSpec::Kind::Tournament: return "tournament";
        case SelectionSpec::Kind::Comma: return "comma";
    }
    return "?";
}

std::string mutation_kind_name(const MutationSpec& m) {
    switch (m.kind) {
        case MutationSpec::Kind::Bitwise: return "bitwise";
        case MutationSpec::Kind::Point: return "point";
        case MutationSpec::Kind::FlipDistribution: return "flipdist";
    }
    return "?";
}

} // namespace

const char* const kRunCsvHeader =
    "function,n,r,selection_kind,selection_param,mutation_kind,chi,lambda,seed,"
    "generations,evaluations,success,best_fitness";
const char* const kSummaryCsvHeader =
    "n,reps,successes,mean_evals,median_evals,stderr_evals,censored";

void ExperimentPlan::validate() const {
    if (n_grid.empty()) throw std::invalid_argument("ExperimentPlan: empty n grid");
    if (replications < 1) throw std::invalid_argument("ExperimentPlan: replications >= 1");
    for (std::size_t n : n_grid) {
        const EAConfig cfg = config_for(n, 0);
        cfg.validate();
    }
}

EAConfig ExperimentPlan::config_for(std::size_t n, std::size_t replication) const {
    const std::size_t n_index =
        static_cast<std::size_t>(std::find(n_grid.begin(), n_grid.end(), n) - n_grid.begin());
    const std::uint64_t run_index = n_index * replications + replication;
    FitnessSpec fitness = family == FitnessFamily::OneMax
                              ? FitnessSpec::onemax(n)
                              : FitnessSpec::plateau(n, r);
    return EAConfig{
        .fitness = std::move(fitness),
        .selection = selection,
        .mutation = mutation,
        .lambda = lambda.lambda_for(n),
        .budget = budget.evaluations_for(n),
        .seed = RandomSource::mix(base_seed, run_index),
    };
}

void write_run_row(std::ostream& out, const RunRow& row) {
    out << row.function << ',' << row.n << ',' << row.r << ','
        << row.selection_kind << ',' << row.selection_param << ','
        << row.mutation_kind << ',' << format_double(row.chi) << ','
        << row.lambda << ',' << row.seed << ','
        << row.generations << ',' << row.evaluations << ','
        << (row.success ? 1 : 0) << ',' << row.best_fitness << '\n';
}

void write_summary_row(std::ostream& out, const SummaryRow& row) {
    out << row.n << ',' << row.replications << ',' << row.successes << ','
        << format_double(row.mean_evals) << ',' << format_double(row.median_evals) << ','
        << format_double(row.stderr_evals) << ',' << row.censored << '\n';
}

SummaryRow summarize_runs(std::size_t n, const std::vector<RunRow>& rows) {
    SummaryRow s;
    s.n = n;
    s.replications = rows.size();
    std::vector<double> evals;
    for (const auto& row : rows) {
        if (row.success) {
            ++s.successes;
            evals.push_back(static_cast<double>(row.evaluations));
        } else {
            ++s.censored;  // budget hit; excluded from runtime statistics
        }
    }
    const auto summary = stats::summarize(std::move(evals));
    s.mean_evals = summary.mean;
    s.median_evals = summary.median;
    s.stderr_evals = summary.stderr_mean;
    return s;
}

std::vector<SummaryRow> run_experiment(const ExperimentPlan& plan,
                                       std::ostream& runs_csv,
                                       std::ostream& summary_csv) {
    plan.validate();
    const std::size_t total = plan.n_grid.size() * plan.replications;
    std::vector<RunRow> rows(total);

    std::size_t workers = plan.threads > 0
                              ? plan.threads
                              : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, total);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            const std::size_t n_index = idx / plan.replications;
            const std::size_t rep = idx % plan.replications;
            const std::size_t n = plan.n_grid[n_index];
            const EAConfig cfg = plan.config_for(n, rep);
            const RunResult result = run_ea(cfg);
            RunRow& row = rows[idx];
            row.function = plan.family == FitnessFamily::OneMax ? "onemax" : "plateau";
            row.n = n;
            row.r = plan.family == FitnessFamily::OneMax ? 0 : plan.r;
            row.selection_kind = selection_kind_name(plan.selection);
            row.selection_param = plan.selection.kind == SelectionSpec::Kind::Tournament
                                      ? plan.selection.k
                                  : plan.selection.kind == SelectionSpec::Kind::Comma
                                      ? plan.selection.mu
                                      : 0;
            row.mutation_kind = mutation_kind_name(plan.mutation);
            row.chi = plan.mutation.kind == MutationSpec::Kind::Bitwise ? plan.mutation.chi : 0.0;
            row.lambda = cfg.lambda;
            row.seed = cfg.seed;
            row.generations = result.generations;
            row.evaluations = result.evaluations;
            row.success = result.success;
            row.best_fitness = result.best_fitness;
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    runs_csv << kRunCsvHeader << '\n';
    for (const auto& row : rows) write_run_row(runs_csv, row);

    std::vector<SummaryRow> summary;
    summary_csv << kSummaryCsvHeader << '\n';
    for (std::size_t n_index = 0; n_index < plan.n_grid.size(); ++n_index) {
        const std::vector<RunRow> group(
            rows.begin() + static_cast<std::ptrdiff_t>(n_index * plan.replications),
            rows.begin() + static_cast<std::ptrdiff_t>((n_index + 1) * plan.replications));
        summary.push_back(summarize_runs(plan.n_grid[n_index], group));
        write_summary_row(summary_csv, summary.back());
    }
    return summary;
}

std::vector<SummaryRow> run_experiment(const ExperimentPlan& plan) {
    namespace fs = std::filesystem;
    const fs::path dir = plan.output_dir.empty() ? fs::path(".") : fs::path(plan.output_dir);
    fs::create_directories(dir);
    std::ofstream runs(dir / "runs.csv", std::ios::binary);
    std::ofstream summary(dir / "summary.csv", std::ios::binary);
    if (!runs || !summary)
        throw std::runtime_error("run_experiment: cannot open output files in " + dir.string());
    return run_experiment(plan, runs, summary);
}

DriftTrial drift_probe_population(const std::vector<Bitstring>& population,
                                  std::size_t n, double chi,
                                  std::size_t offspring_samples, RandomSource& rng) {
    if (population.empty() || offspring_samples < 2)
        throw std::invalid_argument("drift_probe_population: bad arguments");
    const std::size_t lambda = population.size();
    const FitnessSpec fitness = FitnessSpec::plateau(n, 2);
    const MutationSpec mutation = MutationSpec::bitwise(chi);

    std::vector<int> fitnesses(lambda);
    std::uint64_t sum_ones = 0;
    for (std::size_t i = 0; i < lambda; ++i) {
        fitnesses[i] = fitness.evaluate(population[i]);
        sum_ones += population[i].count_ones();
    }
    const SelectionSampler sampler(SelectionSpec::fitness_proportionate(), fitnesses);

    DriftTrial trial;
    trial.population_zeros = static_cast<std::uint64_t>(lambda) * n - sum_ones;

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < offspring_samples; ++s) {
        const Bitstring& parent = population[sampler.draw(rng)];
        const Bitstring child = mutate(mutation, parent, rng);
        const double zeros = static_cast<double>(n - child.count_ones());
        sum += zeros;
        sumsq += zeros * zeros;
    }
    const double samples = static_cast<double>(offspring_samples);
    const double mean = sum / samples;
    const double var = std::max(0.0, (sumsq - sum * sum / samples) / (samples - 1.0));
    const double lam = static_cast<double>(lambda);

    trial.estimate = lam * mean;
    trial.stderr_estimate = lam * std::sqrt(var / samples);
    trial.bound = lam * chi + (1.0 - 2.0 * chi / static_cast<double>(n)) *
                                  static_cast<double>(trial.population_zeros);
    trial.flagged = trial.estimate > trial.bound + kDriftFlagSigma * trial.stderr_estimate;
    return trial;
}

DriftProbeReport drift_probe(std::size_t n, std::size_t lambda, double chi,
                             std::size_t trials, std::size_t offspring_samples,
                             RandomSource& rng) {
    DriftProbeReport report;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<Bitstring> population;
        population.reserve(lambda);
        for (std::size_t i = 0; i < lambda; ++i)
            population.push_back(Bitstring::random(n, rng));
        report.trials.push_back(
            drift_probe_population(population, n, chi, offspring_samples, rng));
        report.any_flagged = report.any_flagged || report.trials.back().flagged;
    }
    return report;
}

StagnationReport stagnation_probe(const EAConfig& config, double eps) {
    if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("stagnation_probe: eps in (0,1)");
    EAConfig probe_config = config;
    probe_config.record_trajectory = true;
    probe_config.trajectory_stride = 1;
    const RunResult result = run_ea(probe_config);

    StagnationReport report;
    report.threshold = static_cast<double>(config.lambda) *
                       static_cast<double>(config.fitness.n()) / 2.0 * (1.0 - eps);
    report.optimum_found = result.success;
    report.generations = result.generations;
    report.evaluations = result.evaluations;
    if (result.trajectory.empty()) {
        // Optimum hit during initialization; no full population to inspect.
        report.min_sum_ones = 0;
        report.dipped_below = false;
        return report;
    }
    report.min_sum_ones = ~std::uint64_t{0};
    for (const auto& rec : result.trajectory)
        report.min_sum_ones = std::min(report.min_sum_ones, rec.sum_ones);
    report.dipped_below =
        static_cast<double>(report.min_sum_ones) < report.threshold;
    return report;
}

double chi_square_selection_test(const SelectionSpec& spec,
                                 std::span<const int> fitnesses,
                                 std::size_t draws, RandomSource& rng) {
    if (draws < 1000)
        throw std::invalid_argument("chi_square_selection_test: draws >= 1000");
    const SelectionSampler sampler(spec, fitnesses);
    std::vector<std::uint64_t> counts(fitnesses.size(), 0);
    for (std::size_t i = 0; i < draws; ++i) ++counts[sampler.draw(rng)];
    return stats::chi_square_gof(counts, sampler.distribution());
}

} // namespace plateau
