#include "plateau/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace plateau {

namespace {

constexpr double kPmfSumTolerance = 1e-12;

// Exact as an integer for n <= 62; lgamma beyond that.
double binomial_coefficient(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    if (n <= 62) {
        unsigned long long c = 1;
        for (std::size_t i = 1; i <= k; ++i)
            c = c * (n - k + i) / i;
        return static_cast<double>(c);
    }
    return std::exp(std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0));
}

// Uniformly random subset of `count` positions out of [0, n), flipped in x.
void flip_uniform_subset(Bitstring& x, std::size_t count, RandomSource& rng) {
    const std::size_t n = x.size();
    if (count == 0) return;
    if (count * 2 <= 32 && count * 8 <= n) {
        // Sparse case: rejection sampling of distinct positions.
        std::size_t picked[32];
        std::size_t have = 0;
        while (have < count) {
            const std::size_t pos = rng.uniform_below(n);
            bool dup = false;
            for (std::size_t j = 0; j < have; ++j)
                if (picked[j] == pos) { dup = true; break; }
            if (!dup) picked[have++] = pos;
        }
        for (std::size_t j = 0; j < count; ++j) x.flip(picked[j]);
        return;
    }
    // Partial Fisher-Yates over the position indices.
    thread_local std::vector<std::uint32_t> positions;
    positions.resize(n);
    std::iota(positions.begin(), positions.end(), 0u);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.uniform_below(n - i);
        std::swap(positions[i], positions[j]);
        x.flip(positions[i]);
    }
}

std::size_t sample_pmf(std::span<const double> pmf, RandomSource& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        acc += pmf[i];
        if (u < acc) return i;
    }
    for (std::size_t i = pmf.size(); i-- > 0;)
        if (pmf[i] > 0.0) return i;
    return 0;
}

} // namespace

MutationSpec MutationSpec::flip_distribution(std::vector<double> pmf) {
    if (pmf.empty()) pmf = {0.5, 0.5};
    double sum = 0.0;
    for (double p : pmf) {
        if (p < 0.0) throw std::invalid_argument("MutationSpec: pmf entries must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPmfSumTolerance)
        throw std::invalid_argument("MutationSpec: pmf must sum to 1");
    return {Kind::FlipDistribution, 0.0, std::move(pmf)};
}

void MutationSpec::validate(std::size_t n) const {
    switch (kind) {
        case Kind::Bitwise:
            if (chi <= 0.0 || chi >= static_cast<double>(n))
                throw std::invalid_argument("MutationSpec: bitwise requires 0 < chi < n");
            break;
        case Kind::FlipDistribution:
            if (pmf.size() > n + 1)
                throw std::invalid_argument("MutationSpec: pmf longer than n+1");
            break;
        case Kind::Point:
            break;
    }
}

Bitstring mutate(const MutationSpec& spec, const Bitstring& x, RandomSource& rng) {
    const std::size_t n = x.size();
    spec.validate(n);
    Bitstring y = x;
    std::size_t flips = 0;
    switch (spec.kind) {
        case MutationSpec::Kind::Bitwise:
            flips = static_cast<std::size_t>(
                rng.binomial(static_cast<int>(n), spec.chi / static_cast<double>(n)));
            break;
        case MutationSpec::Kind::Point:
            flips = 1;
            break;
        case MutationSpec::Kind::FlipDistribution:
            flips = sample_pmf(spec.pmf, rng);
            break;
    }
    flip_uniform_subset(y, flips, rng);
    return y;
}

double transition_probability_at_distance(const MutationSpec& spec, std::size_t n,
                                          std::size_t distance) {
    switch (spec.kind) {
        case MutationSpec::Kind::Bitwise: {
            const double p = spec.chi / static_cast<double>(n);
            return std::pow(p, static_cast<double>(distance)) *
                   std::pow(1.0 - p, static_cast<double>(n - distance));
        }
        case MutationSpec::Kind::Point:
            return distance == 1 ? 1.0 / static_cast<double>(n) : 0.0;
        case MutationSpec::Kind::FlipDistribution: {
            if (distance >= spec.pmf.size()) return 0.0;
            if (spec.pmf[distance] == 0.0) return 0.0;
            return spec.pmf[distance] / binomial_coefficient(n, distance);
        }
    }
    throw std::logic_error("mutation: unknown kind");
}

double transition_probability(const MutationSpec& spec, const Bitstring& x,
                              const Bitstring& y) {
    return transition_probability_at_distance(spec, x.size(), hamming(x, y));
}

std::vector<double> flip_count_pmf(const MutationSpec& spec, std::size_t n) {
    std::vector<double> pmf(n + 1, 0.0);
    switch (spec.kind) {
        case MutationSpec::Kind::Bitwise: {
            const double p = spec.chi / static_cast<double>(n);
            const double ratio = p / (1.0 - p);
            // Binomial(n, p) by the stable term recurrence.
            double term = std::pow(1.0 - p, static_cast<double>(n));
            for (std::size_t k = 0; k <= n; ++k) {
                pmf[k] = term;
                if (k < n)
                    term *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
            }
            break;
        }
        case MutationSpec::Kind::Point:
            pmf[1] = 1.0;
            break;
        case MutationSpec::Kind::FlipDistribution:
            std::copy(spec.pmf.begin(), spec.pmf.end(), pmf.begin());
            break;
    }
    return pmf;
}

std::map<Bitstring, double> exact_offspring_distribution(const MutationSpec& spec,
                                                         const Bitstring& x) {
    const std::size_t n = x.size();
    if (n > 16)
        throw std::invalid_argument("exact_offspring_distribution: n must be <= 16");
    spec.validate(n);
    std::map<Bitstring, double> dist;
    for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
        Bitstring y(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((bits >> i) & 1ULL) y.set(i, true);
        const double p = transition_probability(spec, x, y);
        if (p > 0.0) dist.emplace(std::move(y), p);
    }
    return dist;
}

} // namespace plateau
