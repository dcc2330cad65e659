#include "plateau/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace plateau {

void SelectionSpec::validate(std::size_t lambda) const {
    if (lambda < 1) throw std::invalid_argument("selection: lambda >= 1");
    switch (kind) {
        case Kind::Tournament:
            if (k < 1) throw std::invalid_argument("selection: tournament k >= 1");
            break;
        case Kind::Comma:
            if (mu < 1 || static_cast<std::size_t>(mu) > lambda)
                throw std::invalid_argument("selection: comma requires 1 <= mu <= lambda");
            break;
        case Kind::FitnessProportionate:
            break;
    }
}

namespace {

std::vector<double> fprop_distribution(std::span<const int> fitnesses) {
    const std::size_t lambda = fitnesses.size();
    long long sum = 0;
    for (int f : fitnesses) {
        if (f < 0) throw std::invalid_argument("selection: fitness-proportionate requires non-negative fitnesses");
        sum += f;
    }
    std::vector<double> p(lambda);
    if (sum == 0) {
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(lambda));
    } else {
        for (std::size_t i = 0; i < lambda; ++i)
            p[i] = static_cast<double>(fitnesses[i]) / static_cast<double>(sum);
    }
    return p;
}

// Probability that the tournament winner has fitness exactly f:
// (c_le/lambda)^k - (c_lt/lambda)^k, with c_le/c_lt the counts of
// individuals with fitness <= f / < f; split equally within the tie group.
std::vector<double> tournament_distribution(std::span<const int> fitnesses, int k) {
    const std::size_t lambda = fitnesses.size();
    std::vector<int> sorted(fitnesses.begin(), fitnesses.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> p(lambda);
    for (std::size_t i = 0; i < lambda; ++i) {
        const int f = fitnesses[i];
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), f);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), f);
        const double c_lt = static_cast<double>(lo - sorted.begin());
        const double c_le = static_cast<double>(hi - sorted.begin());
        const double group = c_le - c_lt;
        const double win = std::pow(c_le / static_cast<double>(lambda), k) -
                           std::pow(c_lt / static_cast<double>(lambda), k);
        p[i] = win / group;
    }
    return p;
}

std::vector<double> comma_distribution(std::span<const int> fitnesses, int mu) {
    const std::size_t lambda = fitnesses.size();
    if (static_cast<std::size_t>(mu) > lambda)
        throw std::invalid_argument("selection: comma mu > lambda");
    std::vector<std::size_t> order(lambda);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fitnesses[a] > fitnesses[b];
    });
    std::vector<double> p(lambda, 0.0);
    for (int i = 0; i < mu; ++i)
        p[order[static_cast<std::size_t>(i)]] = 1.0 / static_cast<double>(mu);
    return p;
}

} // namespace

std::vector<double> selection_distribution(const SelectionSpec& spec,
                                           std::span<const int> fitnesses) {
    if (fitnesses.empty()) throw std::invalid_argument("selection: empty population");
    switch (spec.kind) {
        case SelectionSpec::Kind::FitnessProportionate:
            return fprop_distribution(fitnesses);
        case SelectionSpec::Kind::Tournament:
            return tournament_distribution(fitnesses, spec.k);
        case SelectionSpec::Kind::Comma:
            return comma_distribution(fitnesses, spec.mu);
    }
    throw std::logic_error("selection: unknown kind");
}

std::size_t sample_index(std::span<const double> distribution, RandomSource& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < distribution.size(); ++i) {
        acc += distribution[i];
        if (u < acc) return i;
    }
    // u landed in the rounding slack past the last positive entry.
    for (std::size_t i = distribution.size(); i-- > 0;)
        if (distribution[i] > 0.0) return i;
    return distribution.size() - 1;
}

double beta(double gamma, const SelectionSpec& spec, std::span<const int> fitnesses) {
    if (gamma <= 0.0 || gamma > 1.0)
        throw std::invalid_argument("beta: gamma must be in (0,1]");
    const std::size_t lambda = fitnesses.size();
    std::vector<int> sorted(fitnesses.begin(), fitnesses.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<int>());
    const auto rank = static_cast<std::size_t>(
        std::ceil(gamma * static_cast<double>(lambda)));
    const int threshold = sorted[std::min(rank, lambda) - 1];
    const auto p = selection_distribution(spec, fitnesses);
    double b = 0.0;
    for (std::size_t i = 0; i < lambda; ++i)
        if (fitnesses[i] >= threshold) b += p[i];
    return b;
}

std::vector<double> reproductive_rates(const SelectionSpec& spec,
                                       std::span<const int> fitnesses,
                                       std::size_t lambda) {
    auto rates = selection_distribution(spec, fitnesses);
    for (auto& a : rates) a *= static_cast<double>(lambda);
    return rates;
}

SelectionSampler::SelectionSampler(const SelectionSpec& spec,
                                   std::span<const int> fitnesses)
    : probs_(selection_distribution(spec, fitnesses)) {
    cumulative_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        acc += probs_[i];
        cumulative_[i] = acc;
        max_prob_ = std::max(max_prob_, probs_[i]);
    }
    cumulative_.back() = std::max(cumulative_.back(), 1.0);
}

std::size_t SelectionSampler::draw(RandomSource& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i >= probs_.size()) i = probs_.size() - 1;
    while (i > 0 && probs_[i] == 0.0) --i;
    return i;
}

} // namespace plateau
