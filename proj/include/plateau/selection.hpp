#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "plateau/rng.hpp"

namespace plateau {

/// The three selection mechanisms, each with a closed-form per-index
/// selection probability model.
///
/// Tie-breaking (the underlying results hold for arbitrary resolution):
///  - tournament: among tied tournament winners, the one sampled first wins;
///    by exchangeability every member of a tie group is equally likely.
///  - comma: rank by fitness descending, ties by ascending original index;
///    the top mu indices are selected with probability 1/mu each.
struct SelectionSpec {
    enum class Kind { FitnessProportionate, Tournament, Comma };

    Kind kind = Kind::FitnessProportionate;
    int k = 2;   // tournament size
    int mu = 1;  // comma pool size

    static SelectionSpec fitness_proportionate() { return {Kind::FitnessProportionate, 0, 0}; }

    static SelectionSpec tournament(int k) {
        if (k < 1) throw std::invalid_argument("SelectionSpec: tournament k >= 1");
        return {Kind::Tournament, k, 0};
    }

    static SelectionSpec comma(int mu) {
        if (mu < 1) throw std::invalid_argument("SelectionSpec: comma mu >= 1");
        return {Kind::Comma, 0, mu};
    }

    void validate(std::size_t lambda) const;

    bool operator==(const SelectionSpec&) const = default;
};

/// Exact per-index selection probabilities over a population with the given
/// fitnesses (lambda = fitnesses.size()). Entries sum to 1 within 1e-12.
std::vector<double> selection_distribution(const SelectionSpec& spec,
                                           std::span<const int> fitnesses);

/// One draw from a selection distribution.
std::size_t sample_index(std::span<const double> distribution, RandomSource& rng);

/// Cumulative selection probability: probability of drawing an individual
/// at least as fit as the ceil(gamma*lambda)-ranked one.
double beta(double gamma, const SelectionSpec& spec, std::span<const int> fitnesses);

/// Expected offspring counts per parent index: lambda * p_sel(i).
std::vector<double> reproductive_rates(const SelectionSpec& spec,
                                       std::span<const int> fitnesses,
                                       std::size_t lambda);

/// Precomputed cumulative distribution for repeated draws within one
/// generation.
class SelectionSampler {
public:
    SelectionSampler(const SelectionSpec& spec, std::span<const int> fitnesses);

    std::size_t draw(RandomSource& rng) const;
    const std::vector<double>& distribution() const { return probs_; }
    double max_probability() const { return max_prob_; }

private:
    std::vector<double> probs_;
    std::vector<double> cumulative_;
    double max_prob_ = 0.0;
};

} // namespace plateau
