#include <doctest.h>

#include "plateau/fitness.hpp"
#include "plateau/rng.hpp"

using namespace plateau;

namespace {

Bitstring with_ones(std::size_t n, std::size_t k) {
    Bitstring x(n);
    for (std::size_t i = 0; i < k; ++i) x.set(i, true);
    return x;
}

} // namespace

TEST_CASE("plateau piecewise values") {
    const auto spec = FitnessSpec::plateau(5, 2);
    CHECK(spec.evaluate(with_ones(5, 5)) == 5);
    CHECK(spec.evaluate(with_ones(5, 4)) == 3);
    CHECK(spec.evaluate(with_ones(5, 2)) == 2);
}

TEST_CASE("is_optimum") {
    const auto spec = FitnessSpec::plateau(5, 2);
    CHECK(spec.is_optimum(Bitstring::from_string("11111")));
    CHECK_FALSE(spec.is_optimum(Bitstring::from_string("11110")));

    const auto masked = FitnessSpec::onemax(
        3, InstanceTransform(Bitstring::from_string("111"), {0, 1, 2}));
    CHECK(masked.is_optimum(Bitstring::from_string("000")));
    CHECK(masked.optimum_point() == Bitstring::from_string("000"));
}

TEST_CASE("optimum_value") {
    CHECK(FitnessSpec::onemax(7).optimum_value() == 7);
    CHECK(FitnessSpec::plateau(9, 3).optimum_value() == 9);
    CHECK(FitnessSpec::plateau(5, 2).optimum_value() == 5);
}

TEST_CASE("plateau agrees with the piecewise definition exhaustively (n <= 12)") {
    for (std::size_t n : {4, 8, 12}) {
        for (int r = 2; r < static_cast<int>(n); ++r) {
            const auto spec = FitnessSpec::plateau(n, r);
            const auto om = FitnessSpec::onemax(n);
            for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
                Bitstring x(n);
                for (std::size_t i = 0; i < n; ++i)
                    if ((bits >> i) & 1ULL) x.set(i, true);
                const std::size_t ones = x.count_ones();
                const int value = spec.evaluate(x);
                if (ones <= n - static_cast<std::size_t>(r))
                    CHECK(value == om.evaluate(x));
                else if (ones < n)
                    CHECK(value == static_cast<int>(n) - r);
                else
                    CHECK(value == static_cast<int>(n));
                CHECK(spec.is_optimum(x) == (ones == n));
            }
        }
    }
}

TEST_CASE("plateau fitness is non-decreasing in count of ones") {
    const std::size_t n = 40;
    const auto spec = FitnessSpec::plateau(n, 3);
    int previous = -1;
    for (std::size_t k = 0; k <= n; ++k) {
        const int value = spec.value_at_level(k);
        CHECK(value >= previous);
        previous = value;
    }
}

TEST_CASE("evaluate with transform equals evaluate of the transformed input") {
    RandomSource rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng.uniform_below(30);
        const auto t = InstanceTransform::random(n, rng);
        const auto plain = FitnessSpec::plateau(n, 2);
        const auto transformed = FitnessSpec::plateau(n, 2, t);
        const auto x = Bitstring::random(n, rng);
        CHECK(transformed.evaluate(x) == plain.evaluate(apply_transform(t, x)));
    }
}

TEST_CASE("r is validated at construction") {
    CHECK_THROWS_AS(FitnessSpec::plateau(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(FitnessSpec::plateau(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(FitnessSpec::plateau(5, 7), std::invalid_argument);
    CHECK_NOTHROW(FitnessSpec::plateau(5, 4));
}
