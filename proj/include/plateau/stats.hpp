#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace plateau::stats {

/// Upper regularized incomplete gamma Q(a, x); survival function machinery
/// for the chi-square test.
double gammq(double a, double x);

/// P(X >= statistic) for X ~ chi-square with df degrees of freedom.
double chi_square_pvalue(double statistic, std::uint64_t df);

/// Goodness-of-fit p-value of observed counts against model probabilities.
/// Cells with expected count below 5 are pooled into one cell first;
/// zero-probability cells must have zero observations.
double chi_square_gof(std::span<const std::uint64_t> observed,
                      std::span<const double> probabilities);

struct ScalingFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares on (ln n, ln runtime); needs >= 3 distinct n.
ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points);

struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double stderr_mean = 0.0;
};

Summary summarize(std::vector<double> values);

} // namespace plateau::stats
