#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "plateau/rng.hpp"
#include "plateau/stats.hpp"

using namespace plateau;
using namespace plateau::stats;

TEST_CASE("gammq reference values") {
    // Q(1, x) = exp(-x) exactly
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0})
        CHECK(gammq(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    CHECK(gammq(0.5, 2.0) == doctest::Approx(0.045500263896358414).epsilon(1e-12));
    CHECK(gammq(3.3, 1.2) == doctest::Approx(0.91578486557030870).epsilon(1e-12));
    CHECK(gammq(3.3, 8.0) == doctest::Approx(0.019944117948406172).epsilon(1e-12));
    CHECK(gammq(2.0, 0.0) == 1.0);
    CHECK_THROWS_AS(gammq(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gammq(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("chi_square_pvalue reference quantiles") {
    CHECK(chi_square_pvalue(1.0, 1) ==
          doctest::Approx(0.31731050786291410).epsilon(1e-12));
    CHECK(chi_square_pvalue(3.841458820694124, 1) ==
          doctest::Approx(0.05).epsilon(1e-12));
    CHECK(chi_square_pvalue(11.070497693516351, 5) ==
          doctest::Approx(0.05).epsilon(1e-12));
    CHECK(chi_square_pvalue(10.0, 10) ==
          doctest::Approx(0.44049328506521241).epsilon(1e-12));
    CHECK(chi_square_pvalue(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(chi_square_pvalue(0.0, 3) == 1.0);
    CHECK(chi_square_pvalue(5.0, 0) == 1.0);
}

TEST_CASE("chi_square_gof on a hand-worked table") {
    // expected (60, 30, 10) vs observed (50, 35, 15):
    // stat = 100/60 + 25/30 + 25/10 = 5, df = 2
    const std::vector<std::uint64_t> observed = {50, 35, 15};
    const std::vector<double> probabilities = {0.6, 0.3, 0.1};
    CHECK(chi_square_gof(observed, probabilities) ==
          doctest::Approx(chi_square_pvalue(5.0, 2)).epsilon(1e-12));
}

TEST_CASE("chi_square_gof pools cells with expected count below 5") {
    // with 100 draws, the two 0.02 cells (expected 2 each) pool into one
    // cell of expected 4, which is still < 5 and folds into the largest cell;
    // the result must be finite and a valid probability
    const std::vector<std::uint64_t> observed = {49, 47, 2, 2};
    const std::vector<double> probabilities = {0.48, 0.48, 0.02, 0.02};
    const double p = chi_square_gof(observed, probabilities);
    CHECK(p > 0.5);
    CHECK(p <= 1.0);
}

TEST_CASE("chi_square_gof edge cases") {
    // impossible cell observed
    const std::vector<std::uint64_t> bad = {10, 1};
    const std::vector<double> one_hot = {1.0, 0.0};
    CHECK(chi_square_gof(bad, one_hot) == 0.0);

    // zero-probability cell with zero observations is dropped
    const std::vector<std::uint64_t> ok = {55, 45, 0};
    const std::vector<double> p3 = {0.5, 0.5, 0.0};
    CHECK(chi_square_gof(ok, p3) ==
          doctest::Approx(chi_square_pvalue(1.0, 1)).epsilon(1e-12));

    // fewer than two effective cells carries no evidence
    const std::vector<std::uint64_t> single = {100};
    const std::vector<double> p1 = {1.0};
    CHECK(chi_square_gof(single, p1) == 1.0);

    CHECK_THROWS_AS(chi_square_gof(std::vector<std::uint64_t>{1},
                                   std::vector<double>{0.5, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("chi_square_gof accepts true-model samples and rejects wrong ones") {
    RandomSource rng(51);
    const std::vector<double> model = {0.5, 0.3, 0.2};
    std::vector<std::uint64_t> counts(3, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ++counts[u < 0.5 ? 0 : (u < 0.8 ? 1 : 2)];
    }
    CHECK(chi_square_gof(counts, model) > 1e-3);
    const std::vector<double> wrong = {0.4, 0.4, 0.2};
    CHECK(chi_square_gof(counts, wrong) < 1e-6);
}

TEST_CASE("fit_scaling_exponent recovers an exact power law") {
    std::vector<std::pair<double, double>> points;
    for (double n : {16.0, 24.0, 32.0, 48.0, 64.0})
        points.emplace_back(n, 3.5 * n * n);
    const auto fit = fit_scaling_exponent(points);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.5)).epsilon(1e-9));
    CHECK(fit.stderr_slope == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("fit_scaling_exponent with noise stays near the true slope") {
    RandomSource rng(52);
    std::vector<std::pair<double, double>> points;
    for (double n : {16.0, 24.0, 32.0, 48.0, 64.0, 96.0})
        for (int rep = 0; rep < 10; ++rep)
            points.emplace_back(n, 2.0 * n * n * (0.9 + 0.2 * rng.uniform()));
    const auto fit = fit_scaling_exponent(points);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.05));
    CHECK(fit.stderr_slope > 0.0);
}

TEST_CASE("fit_scaling_exponent needs three distinct n") {
    std::vector<std::pair<double, double>> points = {
        {16.0, 100.0}, {16.0, 110.0}, {32.0, 400.0}, {32.0, 410.0}};
    CHECK_THROWS_AS(fit_scaling_exponent(points), std::invalid_argument);
    points.emplace_back(64.0, 1600.0);
    CHECK_NOTHROW(fit_scaling_exponent(points));
}

TEST_CASE("summarize") {
    const auto s = summarize({4.0, 1.0, 3.0, 2.0});
    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(s.median == doctest::Approx(2.5).epsilon(1e-15));
    // sample sd = sqrt(5/3), stderr = sd / 2
    CHECK(s.stderr_mean == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));

    const auto odd = summarize({5.0, 1.0, 9.0});
    CHECK(odd.median == doctest::Approx(5.0));

    const auto empty = summarize({});
    CHECK(empty.count == 0);
    CHECK(empty.mean == 0.0);

    const auto single = summarize({7.0});
    CHECK(single.mean == 7.0);
    CHECK(single.median == 7.0);
    CHECK(single.stderr_mean == 0.0);
}
