#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plateau/fitness.hpp"
#include "plateau/mutation.hpp"
#include "plateau/selection.hpp"

namespace plateau {

/// One configured run of the non-elitist EA.
///
/// Runtime accounting: the initial population costs lambda evaluations,
/// every offspring costs one, and the run stops immediately at the first
/// evaluation of an optimal point (that evaluation is counted). Without an
/// optimum the run stops once the budget is exhausted at a generation
/// boundary, so evaluations = lambda * (generations + 1) and never exceeds
/// budget + lambda.
struct EAConfig {
    FitnessSpec fitness;
    SelectionSpec selection;
    MutationSpec mutation;
    std::size_t lambda = 1;
    std::uint64_t budget = 0;       // max fitness evaluations
    std::uint64_t seed = 0;
    bool record_trajectory = false;
    std::uint64_t trajectory_stride = 0;  // 0 = every generation for lambda <= 2048, else every 10th
    double gamma0 = 0.25;           // gamma for the beta instrumentation column

    void validate() const;
    std::uint64_t effective_stride() const {
        if (trajectory_stride > 0) return trajectory_stride;
        return lambda <= 2048 ? 1 : 10;
    }
};

/// Per-generation instrumentation, computed on the parent population.
struct TrajectoryRecord {
    std::uint64_t generation = 0;
    int best_fitness = 0;
    std::uint64_t sum_ones = 0;      // sum over the population of level ones
    std::size_t plateau_count = 0;   // individuals with level >= n - r
    double max_reproductive_rate = 0.0;
    double beta_at_gamma0 = 0.0;
};

struct RunResult {
    bool success = false;
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
    int best_fitness = 0;
    std::vector<TrajectoryRecord> trajectory;
};

RunResult run_ea(const EAConfig& config);

/// One generation: lambda offspring, each by one selection draw and one
/// mutation. The record is computed on the parent population.
std::pair<std::vector<Bitstring>, TrajectoryRecord>
run_generation(const std::vector<Bitstring>& population, const EAConfig& config,
               RandomSource& rng);

TrajectoryRecord population_record(const std::vector<Bitstring>& population,
                                   const EAConfig& config, std::uint64_t generation);

/// Elitist (1+1) EA baseline: offspring replaces the parent iff its fitness
/// is at least as good. `start` overrides the uniform initial point (debug).
RunResult run_opo(const FitnessSpec& fitness, const MutationSpec& mutation,
                  std::uint64_t budget, std::uint64_t seed,
                  const std::optional<Bitstring>& start = {});

} // namespace plateau
