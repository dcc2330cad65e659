#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "plateau/bitstring.hpp"
#include "plateau/rng.hpp"

namespace plateau {

/// Unbiased mutation operators. Each one is fully described by its
/// flip-count distribution: a draw of xi bits to flip, then a uniformly
/// random subset of exactly xi positions. For bitwise mutation with rate
/// chi/n this is the Binomial(n, chi/n) flip count, which matches the
/// per-bit coin-flip definition exactly.
struct MutationSpec {
    enum class Kind { Bitwise, Point, FlipDistribution };

    Kind kind = Kind::Bitwise;
    double chi = 1.0;
    std::vector<double> pmf;  // FlipDistribution only: p_0, p_1, ...

    static MutationSpec bitwise(double chi) {
        if (chi <= 0.0) throw std::invalid_argument("MutationSpec: chi must be positive");
        return {Kind::Bitwise, chi, {}};
    }

    static MutationSpec point() { return {Kind::Point, 0.0, {}}; }

    /// Default constants for the generic operator when none are given:
    /// p_0 = p_1 = 1/2.
    static MutationSpec flip_distribution(std::vector<double> pmf);

    void validate(std::size_t n) const;

    bool operator==(const MutationSpec&) const = default;
};

Bitstring mutate(const MutationSpec& spec, const Bitstring& x, RandomSource& rng);

/// Exact probability of producing y from x; depends only on (spec, n, H(x,y)).
double transition_probability(const MutationSpec& spec, const Bitstring& x,
                              const Bitstring& y);

/// Same, as a function of the Hamming distance.
double transition_probability_at_distance(const MutationSpec& spec, std::size_t n,
                                          std::size_t distance);

/// Distribution of the number of flipped bits, padded to length n+1.
std::vector<double> flip_count_pmf(const MutationSpec& spec, std::size_t n);

/// Full offspring distribution by enumeration; n <= 16.
std::map<Bitstring, double> exact_offspring_distribution(const MutationSpec& spec,
                                                         const Bitstring& x);

} // namespace plateau
