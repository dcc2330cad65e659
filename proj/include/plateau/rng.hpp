#pragma once

#include <cstdint>
#include <random>

namespace plateau {

/// Seeded random source. One instance per run/replication; never shared
/// between concurrent tasks.
///
/// Replication fan-out: the child stream for replication i of a plan with
/// base seed s is seeded with splitmix64(s + (i+1) * 0x9E3779B97F4A7C15).
/// The same seed always reproduces the same draw sequence.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    static std::uint64_t mix(std::uint64_t base_seed, std::uint64_t index) {
        return splitmix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
    }

    static RandomSource for_replication(std::uint64_t base_seed, std::uint64_t index) {
        return RandomSource(mix(base_seed, index));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

    /// Uniform integer in [0, bound); bound must be positive.
    std::size_t uniform_below(std::size_t bound) {
        return std::uniform_int_distribution<std::size_t>(0, bound - 1)(gen_);
    }

    bool bernoulli(double p) {
        return std::bernoulli_distribution(p)(gen_);
    }

    int binomial(int n, double p) {
        if (p <= 0.0 || n == 0) return 0;
        return std::binomial_distribution<int>(n, p)(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    static std::uint64_t splitmix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

} // namespace plateau
