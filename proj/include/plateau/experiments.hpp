#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "plateau/engine.hpp"
#include "plateau/stats.hpp"

namespace plateau {

/// Budget as a fixed evaluation count or a polynomial coeff * n^exponent.
struct BudgetPolicy {
    enum class Kind { Fixed, Polynomial };
    Kind kind = Kind::Fixed;
    std::uint64_t fixed = 0;
    double coeff = 0.0;
    double exponent = 0.0;

    static BudgetPolicy fixed_evals(std::uint64_t evals) {
        return {Kind::Fixed, evals, 0.0, 0.0};
    }
    static BudgetPolicy polynomial(double coeff, double exponent) {
        return {Kind::Polynomial, 0, coeff, exponent};
    }

    std::uint64_t evaluations_for(std::size_t n) const {
        if (kind == Kind::Fixed) return fixed;
        return static_cast<std::uint64_t>(
            std::ceil(coeff * std::pow(static_cast<double>(n), exponent)));
    }
};

/// Population size as a constant or a documented rule of n.
struct LambdaRule {
    enum class Kind { Fixed, CeilLog, CeilN2Log };
    Kind kind = Kind::Fixed;
    std::size_t fixed = 1;
    double coeff = 20.0;  // CeilLog: ceil(coeff * ln n)

    static LambdaRule fixed_size(std::size_t lambda) { return {Kind::Fixed, lambda, 0.0}; }
    static LambdaRule ceil_log(double coeff) { return {Kind::CeilLog, 0, coeff}; }
    static LambdaRule ceil_n2_log() { return {Kind::CeilN2Log, 0, 0.0}; }

    std::size_t lambda_for(std::size_t n) const {
        const double nn = static_cast<double>(n);
        switch (kind) {
            case Kind::Fixed: return fixed;
            case Kind::CeilLog:
                return static_cast<std::size_t>(std::ceil(coeff * std::log(nn)));
            case Kind::CeilN2Log:
                return static_cast<std::size_t>(std::ceil(nn * nn * std::log(nn)));
        }
        return fixed;
    }
};

struct ExperimentPlan {
    FitnessFamily family = FitnessFamily::Plateau;
    int r = 2;
    SelectionSpec selection;
    MutationSpec mutation;
    LambdaRule lambda;
    BudgetPolicy budget;
    std::vector<std::size_t> n_grid;
    std::size_t replications = 1;
    std::uint64_t base_seed = 0;
    std::string output_dir;
    std::size_t threads = 0;  // 0 = hardware concurrency

    void validate() const;
    EAConfig config_for(std::size_t n, std::size_t replication) const;
};

struct RunRow {
    std::string function;
    std::size_t n = 0;
    int r = 0;
    std::string selection_kind;
    int selection_param = 0;
    std::string mutation_kind;
    double chi = 0.0;
    std::size_t lambda = 0;
    std::uint64_t seed = 0;
    std::uint64_t generations = 0;
    std::uint64_t evaluations = 0;
    bool success = false;
    int best_fitness = 0;
};

struct SummaryRow {
    std::size_t n = 0;
    std::size_t replications = 0;
    std::size_t successes = 0;
    std::size_t censored = 0;
    double mean_evals = 0.0;
    double median_evals = 0.0;
    double stderr_evals = 0.0;
};

extern const char* const kRunCsvHeader;
extern const char* const kSummaryCsvHeader;

void write_run_row(std::ostream& out, const RunRow& row);
void write_summary_row(std::ostream& out, const SummaryRow& row);

/// Runs replications x |n_grid| seeded runs (replications may execute
/// concurrently; ordering of the output is by (n, replication) regardless of
/// scheduling). Rows are streamed to the two writers.
std::vector<SummaryRow> run_experiment(const ExperimentPlan& plan,
                                       std::ostream& runs_csv,
                                       std::ostream& summary_csv);

/// Convenience wrapper writing runs.csv and summary.csv under plan.output_dir.
std::vector<SummaryRow> run_experiment(const ExperimentPlan& plan);

SummaryRow summarize_runs(std::size_t n, const std::vector<RunRow>& rows);

/// Monte Carlo check of the per-offspring zero-count drift inequality
/// E[Z_{t+1}(j) | P] <= chi + (1 - 2chi/n) Z(P)/lambda under
/// fitness-proportionate selection and bitwise mutation.
struct DriftTrial {
    std::uint64_t population_zeros = 0;  // Z(P)
    double bound = 0.0;                  // population-aggregated bound
    double estimate = 0.0;               // lambda * per-offspring sample mean
    double stderr_estimate = 0.0;
    bool flagged = false;                // estimate > bound + 4*SE
};

struct DriftProbeReport {
    std::vector<DriftTrial> trials;
    bool any_flagged = false;
};

/// Statistical acceptance margin used by the drift probe.
inline constexpr double kDriftFlagSigma = 4.0;

DriftTrial drift_probe_population(const std::vector<Bitstring>& population,
                                  std::size_t n, double chi,
                                  std::size_t offspring_samples, RandomSource& rng);

DriftProbeReport drift_probe(std::size_t n, std::size_t lambda, double chi,
                             std::size_t trials, std::size_t offspring_samples,
                             RandomSource& rng);

/// Runs the EA to its budget and reports whether the population ones-sum
/// ever fell below lambda * (n/2) * (1 - eps), and whether the optimum
/// appeared.
struct StagnationReport {
    std::uint64_t min_sum_ones = 0;
    double threshold = 0.0;
    bool dipped_below = false;
    bool optimum_found = false;
    std::uint64_t generations = 0;
    std::uint64_t evaluations = 0;
};

StagnationReport stagnation_probe(const EAConfig& config, double eps);

/// Chi-square goodness-of-fit p-value of empirical selection draws against
/// the closed-form selection distribution.
double chi_square_selection_test(const SelectionSpec& spec,
                                 std::span<const int> fitnesses,
                                 std::size_t draws, RandomSource& rng);

} // namespace plateau
