#include "plateau/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace plateau {

void EAConfig::validate() const {
    if (lambda < 1) throw std::invalid_argument("EAConfig: lambda >= 1");
    if (budget < lambda) throw std::invalid_argument("EAConfig: budget >= lambda");
    if (gamma0 <= 0.0 || gamma0 > 1.0)
        throw std::invalid_argument("EAConfig: gamma0 in (0,1]");
    selection.validate(lambda);
    mutation.validate(fitness.n());
}

TrajectoryRecord population_record(const std::vector<Bitstring>& population,
                                   const EAConfig& config, std::uint64_t generation) {
    const auto& fit = config.fitness;
    TrajectoryRecord rec;
    rec.generation = generation;

    std::vector<int> fitnesses(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        const std::size_t level = fit.level_ones(population[i]);
        fitnesses[i] = fit.value_at_level(level);
        rec.sum_ones += level;
        if (level >= fit.n() - static_cast<std::size_t>(fit.r())) ++rec.plateau_count;
        rec.best_fitness = std::max(rec.best_fitness, fitnesses[i]);
    }
    const auto dist = selection_distribution(config.selection, fitnesses);
    rec.max_reproductive_rate =
        static_cast<double>(config.lambda) * *std::max_element(dist.begin(), dist.end());
    rec.beta_at_gamma0 = beta(config.gamma0, config.selection, fitnesses);
    return rec;
}

RunResult run_ea(const EAConfig& config) {
    config.validate();
    RandomSource rng(config.seed);
    const auto& fit = config.fitness;
    const std::size_t lambda = config.lambda;
    const std::uint64_t stride = config.effective_stride();

    RunResult result;
    std::vector<Bitstring> population;
    std::vector<int> fitnesses(lambda);
    population.reserve(lambda);

    for (std::size_t i = 0; i < lambda; ++i) {
        population.push_back(Bitstring::random(fit.n(), rng));
        fitnesses[i] = fit.evaluate(population[i]);
        ++result.evaluations;
        result.best_fitness = std::max(result.best_fitness, fitnesses[i]);
        if (fitnesses[i] == fit.optimum_value()) {
            result.success = true;
            return result;
        }
    }

    std::vector<Bitstring> offspring;
    std::vector<int> offspring_fitnesses(lambda);
    offspring.reserve(lambda);

    while (result.evaluations < config.budget) {
        if (config.record_trajectory && result.generations % stride == 0)
            result.trajectory.push_back(
                population_record(population, config, result.generations));

        const SelectionSampler sampler(config.selection, fitnesses);
        offspring.clear();
        for (std::size_t i = 0; i < lambda; ++i) {
            const std::size_t parent = sampler.draw(rng);
            offspring.push_back(mutate(config.mutation, population[parent], rng));
            offspring_fitnesses[i] = fit.evaluate(offspring[i]);
            ++result.evaluations;
            result.best_fitness = std::max(result.best_fitness, offspring_fitnesses[i]);
            if (offspring_fitnesses[i] == fit.optimum_value()) {
                result.success = true;
                return result;
            }
        }
        population.swap(offspring);
        fitnesses.swap(offspring_fitnesses);
        ++result.generations;
    }
    // Budget exhausted: record the final population so the trajectory covers
    // every population the run produced.
    if (config.record_trajectory)
        result.trajectory.push_back(
            population_record(population, config, result.generations));
    return result;
}

std::pair<std::vector<Bitstring>, TrajectoryRecord>
run_generation(const std::vector<Bitstring>& population, const EAConfig& config,
               RandomSource& rng) {
    if (population.size() != config.lambda)
        throw std::invalid_argument("run_generation: population size != lambda");
    const auto& fit = config.fitness;

    std::vector<int> fitnesses(population.size());
    for (std::size_t i = 0; i < population.size(); ++i)
        fitnesses[i] = fit.evaluate(population[i]);

    const SelectionSampler sampler(config.selection, fitnesses);
    std::vector<Bitstring> offspring;
    offspring.reserve(config.lambda);
    for (std::size_t i = 0; i < config.lambda; ++i) {
        const std::size_t parent = sampler.draw(rng);
        offspring.push_back(mutate(config.mutation, population[parent], rng));
    }
    return {std::move(offspring), population_record(population, config, 0)};
}

RunResult run_opo(const FitnessSpec& fitness, const MutationSpec& mutation,
                  std::uint64_t budget, std::uint64_t seed,
                  const std::optional<Bitstring>& start) {
    mutation.validate(fitness.n());
    if (budget < 1) throw std::invalid_argument("run_opo: budget >= 1");
    RandomSource rng(seed);

    RunResult result;
    Bitstring x = start ? *start : Bitstring::random(fitness.n(), rng);
    int fx = fitness.evaluate(x);
    ++result.evaluations;
    result.best_fitness = fx;
    if (fx == fitness.optimum_value()) {
        result.success = true;
        return result;
    }

    while (result.evaluations < budget) {
        Bitstring y = mutate(mutation, x, rng);
        const int fy = fitness.evaluate(y);
        ++result.evaluations;
        ++result.generations;
        result.best_fitness = std::max(result.best_fitness, fy);
        if (fy == fitness.optimum_value()) {
            result.success = true;
            return result;
        }
        if (fy >= fx) {
            x = std::move(y);
            fx = fy;
        }
    }
    return result;
}

} // namespace plateau
