#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "plateau/selection.hpp"

using namespace plateau;

namespace {

// Brute-force tournament model: enumerate all lambda^k equally likely draw
// tuples; the fittest entry wins, ties going to the earliest draw.
std::vector<double> tournament_by_enumeration(const std::vector<int>& fitnesses, int k) {
    const std::size_t lambda = fitnesses.size();
    std::size_t tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= lambda;
    std::vector<double> p(lambda, 0.0);
    for (std::size_t code = 0; code < tuples; ++code) {
        std::size_t c = code;
        std::size_t winner = 0;
        int best = -1;
        for (int draw = 0; draw < k; ++draw) {
            const std::size_t idx = c % lambda;
            c /= lambda;
            if (fitnesses[idx] > best) {
                best = fitnesses[idx];
                winner = idx;
            }
        }
        p[winner] += 1.0 / static_cast<double>(tuples);
    }
    return p;
}

} // namespace

TEST_CASE("selection_distribution examples") {
    const auto fprop = selection_distribution(SelectionSpec::fitness_proportionate(),
                                              std::vector<int>{3, 1});
    CHECK(fprop[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fprop[1] == doctest::Approx(0.25).epsilon(1e-12));

    const auto tour = selection_distribution(SelectionSpec::tournament(2),
                                             std::vector<int>{5, 3});
    CHECK(tour[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(tour[1] == doctest::Approx(0.25).epsilon(1e-12));

    const auto comma = selection_distribution(SelectionSpec::comma(2),
                                              std::vector<int>{7, 5, 5, 1});
    CHECK(comma[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(comma[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(comma[2] == 0.0);
    CHECK(comma[3] == 0.0);
}

TEST_CASE("fitness-proportionate with all-zero fitnesses is uniform") {
    const auto p = selection_distribution(SelectionSpec::fitness_proportionate(),
                                          std::vector<int>{0, 0, 0, 0});
    for (double v : p) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("comma rejects mu > lambda") {
    CHECK_THROWS_AS(selection_distribution(SelectionSpec::comma(5),
                                           std::vector<int>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("tournament closed form equals brute-force enumeration") {
    RandomSource rng(17);
    for (std::size_t lambda = 1; lambda <= 5; ++lambda) {
        for (int k = 1; k <= 3; ++k) {
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<int> fitnesses(lambda);
                for (auto& f : fitnesses) f = static_cast<int>(rng.uniform_below(4));
                const auto closed =
                    selection_distribution(SelectionSpec::tournament(k), fitnesses);
                const auto brute = tournament_by_enumeration(fitnesses, k);
                for (std::size_t i = 0; i < lambda; ++i)
                    CHECK(closed[i] == doctest::Approx(brute[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("distributions sum to 1 and are f-monotone on random populations") {
    RandomSource rng(18);
    const std::vector<SelectionSpec> specs = {SelectionSpec::fitness_proportionate(),
                                              SelectionSpec::tournament(3),
                                              SelectionSpec::comma(3)};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t lambda = 3 + rng.uniform_below(12);
        std::vector<int> fitnesses(lambda);
        for (auto& f : fitnesses) f = 1 + static_cast<int>(rng.uniform_below(20));
        for (const auto& spec : specs) {
            if (spec.kind == SelectionSpec::Kind::Comma &&
                static_cast<std::size_t>(spec.mu) > lambda)
                continue;
            const auto p = selection_distribution(spec, fitnesses);
            CHECK(std::accumulate(p.begin(), p.end(), 0.0) ==
                  doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t i = 0; i < lambda; ++i) {
                for (std::size_t j = 0; j < lambda; ++j) {
                    if (fitnesses[i] == fitnesses[j]) continue;  // tie groups tested below
                    if (fitnesses[i] > fitnesses[j]) CHECK(p[i] >= p[j] - 1e-15);
                    // fprop and tournament order strictly; comma flattens
                    // everything outside the pool to 0, so only the forward
                    // direction applies there.
                    if (spec.kind != SelectionSpec::Kind::Comma &&
                        fitnesses[i] > fitnesses[j])
                        CHECK(p[i] > p[j]);
                }
            }
        }
    }
}

TEST_CASE("ties within fprop and tournament get equal probability") {
    const std::vector<int> fitnesses = {5, 7, 5, 7, 1};
    for (const auto& spec :
         {SelectionSpec::fitness_proportionate(), SelectionSpec::tournament(4)}) {
        const auto p = selection_distribution(spec, fitnesses);
        CHECK(p[0] == doctest::Approx(p[2]).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(p[3]).epsilon(1e-12));
    }
}

TEST_CASE("comma tie at the mu boundary follows the index tie-break") {
    // fitness 5 ties at the boundary; lower index enters the pool
    const auto p = selection_distribution(SelectionSpec::comma(2),
                                          std::vector<int>{5, 7, 5, 1});
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[2] == 0.0);
}

TEST_CASE("beta examples") {
    const std::vector<int> fitnesses = {7, 5, 5, 1};
    CHECK(beta(1.0, SelectionSpec::fitness_proportionate(), fitnesses) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(beta(0.5, SelectionSpec::fitness_proportionate(), fitnesses) ==
          doctest::Approx(17.0 / 18.0).epsilon(1e-12));
    CHECK(beta(0.5, SelectionSpec::tournament(2), std::vector<int>{5, 3}) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("beta is non-decreasing in gamma") {
    RandomSource rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t lambda = 2 + rng.uniform_below(10);
        std::vector<int> fitnesses(lambda);
        for (auto& f : fitnesses) f = static_cast<int>(rng.uniform_below(9));
        for (const auto& spec :
             {SelectionSpec::fitness_proportionate(), SelectionSpec::tournament(2)}) {
            double previous = 0.0;
            for (double gamma : {0.1, 0.25, 0.5, 0.75, 1.0}) {
                const double b = beta(gamma, spec, fitnesses);
                CHECK(b >= previous - 1e-12);
                previous = b;
            }
            CHECK(beta(1.0, spec, fitnesses) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("reproductive_rates") {
    const std::vector<int> fitnesses = {7, 5, 5, 1};
    const auto rates =
        reproductive_rates(SelectionSpec::fitness_proportionate(), fitnesses, 4);
    CHECK(rates[0] == doctest::Approx(14.0 / 9.0).epsilon(1e-12));
    CHECK(rates[1] == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
    CHECK(rates[2] == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
    CHECK(rates[3] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(std::accumulate(rates.begin(), rates.end(), 0.0) ==
          doctest::Approx(4.0).epsilon(1e-9));

    const auto uniform = reproductive_rates(SelectionSpec::tournament(3),
                                            std::vector<int>{4, 4, 4}, 3);
    for (double a : uniform) CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample_index on a degenerate distribution") {
    RandomSource rng(20);
    const std::vector<double> d = {1.0, 0.0};
    for (int i = 0; i < 100; ++i) CHECK(sample_index(d, rng) == 0);
}

TEST_CASE("sample_index frequencies within 3 sigma") {
    RandomSource rng(21);
    const std::vector<double> d = {0.75, 0.25};
    const std::size_t draws = 1000000;
    std::size_t first = 0;
    for (std::size_t i = 0; i < draws; ++i)
        if (sample_index(d, rng) == 0) ++first;
    const double se = std::sqrt(0.75 * 0.25 / static_cast<double>(draws));
    CHECK(std::abs(static_cast<double>(first) / static_cast<double>(draws) - 0.75) <
          3.0 * se);
}

TEST_CASE("sample_index is reproducible for a fixed seed") {
    const std::vector<double> d = {0.3, 0.3, 0.4};
    RandomSource a(9), b(9);
    for (int i = 0; i < 1000; ++i) CHECK(sample_index(d, a) == sample_index(d, b));
}
