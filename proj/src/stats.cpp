#include "plateau/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plateau::stats {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-14;

// Lower regularized incomplete gamma by its power series; valid for x < a+1.
double gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by continued fraction; valid for x >= a+1.
double gamma_cf(double a, double x) {
    constexpr double kFloor = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kFloor;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFloor) d = kFloor;
        c = b + an / c;
        if (std::abs(c) < kFloor) c = kFloor;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gammq(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gammq: invalid arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_cf(a, x);
}

double chi_square_pvalue(double statistic, std::uint64_t df) {
    if (df == 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return gammq(static_cast<double>(df) / 2.0, statistic / 2.0);
}

double chi_square_gof(std::span<const std::uint64_t> observed,
                      std::span<const double> probabilities) {
    if (observed.size() != probabilities.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    std::uint64_t total = 0;
    for (auto o : observed) total += o;
    if (total == 0) throw std::invalid_argument("chi_square_gof: no observations");

    double pooled_expected = 0.0;
    double pooled_observed = 0.0;
    std::vector<std::pair<double, double>> cells;  // (observed, expected)
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        if (probabilities[i] <= 0.0) {
            if (observed[i] > 0) return 0.0;  // impossible cell observed
            continue;
        }
        if (expected < 5.0) {
            pooled_expected += expected;
            pooled_observed += static_cast<double>(observed[i]);
        } else {
            cells.emplace_back(static_cast<double>(observed[i]), expected);
        }
    }
    if (pooled_expected > 0.0) {
        if (pooled_expected >= 5.0 || cells.empty()) {
            cells.emplace_back(pooled_observed, pooled_expected);
        } else {
            // Still undersized: fold into the largest regular cell.
            auto it = std::max_element(cells.begin(), cells.end(),
                                       [](auto& a, auto& b) { return a.second < b.second; });
            it->first += pooled_observed;
            it->second += pooled_expected;
        }
    }
    if (cells.size() < 2) return 1.0;  // degenerate: single cell carries no evidence

    double stat = 0.0;
    for (const auto& [obs, exp] : cells)
        stat += (obs - exp) * (obs - exp) / exp;
    return chi_square_pvalue(stat, cells.size() - 1);
}

ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> points) {
    std::vector<double> xs, ys;
    for (const auto& [n, runtime] : points) {
        if (n <= 0.0 || runtime <= 0.0)
            throw std::invalid_argument("fit_scaling_exponent: values must be positive");
        xs.push_back(std::log(n));
        ys.push_back(std::log(runtime));
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_scaling_exponent: need >= 3 distinct n");

    const auto m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double resid = ys[i] - fit.intercept - fit.slope * xs[i];
        sse += resid * resid;
    }
    if (xs.size() > 2)
        fit.stderr_slope = std::sqrt(sse / (m - 2.0) / sxx);
    return fit;
}

Summary summarize(std::vector<double> values) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stderr_mean = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                                  static_cast<double>(values.size()));
    }
    return s;
}

} // namespace plateau::stats
