#include "plateau/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace plateau::theory {

namespace {

double log2_of(double x) { return std::log2(x); }

double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

void check_level_params(const LevelParams& p, std::size_t m) {
    if (m >= 1 && p.s.size() != m - 1)
        throw std::invalid_argument("LevelParams: need m-1 upgrade probabilities");
    for (double sj : p.s)
        if (sj <= 0.0 || sj > 1.0)
            throw std::invalid_argument("LevelParams: s_j in (0,1]");
    if (p.gamma0 <= 0.0 || p.gamma0 >= 1.0)
        throw std::invalid_argument("LevelParams: gamma0 in (0,1)");
    if (p.delta <= 0.0 || p.delta > 1.0)
        throw std::invalid_argument("LevelParams: delta in (0,1]");
    if (p.lambda <= 0.0) throw std::invalid_argument("LevelParams: lambda > 0");
}

// Gaussian elimination with partial pivoting; A is row-major n x n.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        if (std::abs(a[pivot * n + col]) < 1e-300)
            throw std::runtime_error("solve_linear: singular matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row * n + col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j)
                a[row * n + j] -= factor * a[col * n + j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t j = row + 1; j < n; ++j)
            acc -= a[row * n + j] * x[j];
        x[row] = acc / a[row * n + row];
    }
    return x;
}

} // namespace

std::size_t LevelPartition::level_of(std::size_t ones) const {
    if (ones > n) throw std::invalid_argument("level_of: ones > n");
    if (kind == Kind::OneMaxLevels) return ones + 1;
    const std::size_t edge = n - static_cast<std::size_t>(r);
    return ones >= edge ? m : ones + 1;
}

LevelPartition plateau_levels(std::size_t n, int r, LevelPartition::Kind kind) {
    if (kind == LevelPartition::Kind::PlateauLevels) {
        if (r < 2 || static_cast<std::size_t>(r) >= n)
            throw std::invalid_argument("plateau_levels: 2 <= r < n");
        return {kind, n, r, n - static_cast<std::size_t>(r) + 1};
    }
    return {kind, n, 0, n + 1};
}

double LevelParams::s_star() const {
    if (s.empty()) throw std::invalid_argument("LevelParams: empty s");
    return *std::min_element(s.begin(), s.end());
}

BoundReport level_based_bound(const LevelParams& p, std::size_t m) {
    check_level_params(p, m);
    BoundReport report;
    report.name = "level-based";
    double sum = 0.0;
    for (double sj : p.s) {
        sum += std::log(6.0 * p.delta * p.lambda / (4.0 + p.gamma0 * sj * p.delta * p.lambda)) +
               1.0 / (p.gamma0 * sj * p.lambda);
    }
    report.value = (8.0 / (p.delta * p.delta)) * sum;

    if (m >= 2) {
        const double s_star = p.s_star();
        const double floor = 4.0 / (p.gamma0 * p.delta * p.delta) *
                             std::log(128.0 * static_cast<double>(m) /
                                      (p.gamma0 * s_star * p.delta * p.delta));
        report.values.emplace_back("m4_lambda_floor", floor);
        report.conditions.push_back({"M4", p.lambda >= floor, p.lambda - floor});
    }
    return report;
}

BoundReport updrift_bound(const LevelParams& p, std::size_t m) {
    check_level_params(p, m);
    if (p.gamma0 * p.lambda <= 1.0)
        throw std::invalid_argument("updrift_bound: gamma0 * lambda must exceed 1");
    BoundReport report;
    report.name = "up-drift order expression";
    double sum = 0.0;
    for (double sj : p.s) sum += 1.0 / (p.gamma0 * sj);
    report.value = p.lambda * static_cast<double>(m) * log2_of(p.gamma0 * p.lambda) / p.delta +
                   sum / p.delta;
    report.conditions.push_back(
        {"gamma0_lambda_gt_1", true, p.gamma0 * p.lambda - 1.0});
    return report;
}

std::uint64_t lambda_floor_M4prime(const LevelParams& p, std::size_t m) {
    check_level_params(p, m);
    if (p.C <= 0.0) throw std::invalid_argument("lambda_floor_M4prime: C > 0");
    const double s_star = p.s_star();
    double lambda = 16.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double inner = (p.C * static_cast<double>(m) / p.delta) *
                             (log2_of(lambda) + 1.0 / (p.gamma0 * s_star * lambda));
        const double rhs = 8.0 / (p.gamma0 * p.delta * p.delta) * log2_of(inner);
        const double next = std::ceil(rhs);
        if (next <= 0.0)
            throw std::runtime_error("lambda_floor_M4prime: non-positive iterate");
        if (next == lambda) return static_cast<std::uint64_t>(lambda);
        lambda = next;
    }
    throw std::runtime_error("lambda_floor_M4prime: no fixed point within 200 iterations");
}

HighPressureParams high_pressure_params(std::size_t m, double s_star) {
    if (s_star <= 0.0 || s_star > 1.0)
        throw std::invalid_argument("high_pressure_params: s_star in (0,1]");
    if (m < 1) throw std::invalid_argument("high_pressure_params: m >= 1");
    const double lm = 1.0 + std::log(static_cast<double>(m));
    HighPressureParams out;
    out.k_min = static_cast<std::uint64_t>(std::ceil(lm * std::numbers::e / s_star));
    out.ratio_min = lm / s_star;
    out.expected_generations = std::numbers::e * static_cast<double>(m);
    return out;
}

PressureFloors theorem3_params(std::size_t n, double p_xi1) {
    if (p_xi1 <= 0.0 || p_xi1 > 1.0)
        throw std::invalid_argument("theorem3_params: p_xi1 in (0,1]");
    const double nn = static_cast<double>(n);
    const double base = nn * (1.0 + std::log(nn)) / p_xi1;
    PressureFloors out;
    out.k_min = static_cast<std::uint64_t>(std::ceil(base * std::numbers::e));
    out.ratio_min = base;
    return out;
}

BoundReport negative_drift_report(double alpha, double chi, double delta, std::size_t n) {
    if (alpha <= 1.0 || chi <= 0.0 || delta <= 0.0)
        throw std::invalid_argument("negative_drift_report: require alpha > 1, chi > 0, delta > 0");
    BoundReport report;
    report.name = "negative-drift";
    const double psi = std::log(alpha) / chi + delta;
    report.values.emplace_back("psi", psi);
    const bool psi_ok = psi < 1.0;
    report.conditions.push_back({"psi_lt_1", psi_ok, 1.0 - psi});
    double threshold = 0.0;
    if (psi_ok)
        threshold = std::min(0.2, 0.5 - std::sqrt(psi * (2.0 - psi) / 4.0));
    report.value = threshold;
    report.values.emplace_back("b_over_n_threshold", threshold);
    report.values.emplace_back("b_cap", static_cast<double>(n) / chi);
    return report;
}

bool pk10_holds(double alpha, double chi, double delta) {
    if (alpha <= 0.0 || chi <= 0.0 || delta <= 0.0)
        throw std::invalid_argument("pk10_holds: positive inputs required");
    return alpha < std::exp(chi) - delta;
}

ApproximationLimits approximation_limits(double chi, double epsilon, std::size_t n) {
    if (chi <= std::numbers::ln2)
        throw std::invalid_argument("approximation_limits: requires chi > ln 2");
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("approximation_limits: epsilon in (0,1)");
    ApproximationLimits out;
    out.rho = std::numbers::ln2 / chi;
    const double psi = std::numbers::ln2 / (2.0 * chi) + 0.5;
    const double m_psi = (1.0 - std::sqrt(psi * (2.0 - psi))) / 2.0;
    const double root = std::sqrt(out.rho / 2.0 - out.rho * out.rho / 4.0 + 0.75);
    const double m_rho = (1.0 - root) / 2.0;
    if (std::abs(m_psi - m_rho) > 1e-10)
        throw std::runtime_error("approximation_limits: dual M forms disagree");
    out.M = m_psi;
    out.z = static_cast<double>(n) * (1.0 - epsilon) / 2.0 *
            (1.0 - std::sqrt(out.rho / 2.0 -
                             (out.rho / 2.0) * (out.rho / 2.0) + 0.75));
    out.w_max = (1.0 - out.rho) * (1.0 - out.rho) / 2.0;
    return out;
}

double fprop_alpha_bound(std::size_t n, int r, double eps_prime) {
    if (eps_prime < 0.0 || eps_prime >= 1.0)
        throw std::invalid_argument("fprop_alpha_bound: eps' in [0,1)");
    if (static_cast<std::size_t>(r) >= n)
        throw std::invalid_argument("fprop_alpha_bound: r < n");
    return 2.0 * static_cast<double>(n) /
           ((1.0 - eps_prime) * static_cast<double>(n - r));
}

double opo_exact_expected_runtime(std::size_t n, int r, const MutationSpec& mutation) {
    if (n > 200) throw std::invalid_argument("opo_exact_expected_runtime: n <= 200");
    if (r != 0 && (r < 2 || static_cast<std::size_t>(r) >= n))
        throw std::invalid_argument("opo_exact_expected_runtime: r = 0 (OneMax) or 2 <= r < n");
    mutation.validate(n);

    const auto fitness_of = [&](std::size_t k) -> int {
        if (r == 0) return static_cast<int>(k);
        const std::size_t edge = n - static_cast<std::size_t>(r);
        if (k <= edge) return static_cast<int>(k);
        return k < n ? static_cast<int>(edge) : static_cast<int>(n);
    };

    // Log-probability of flipping one specific set of `flips` positions.
    const auto log_specific_flip = [&](std::size_t flips) -> double {
        switch (mutation.kind) {
            case MutationSpec::Kind::Bitwise: {
                const double p = mutation.chi / static_cast<double>(n);
                return static_cast<double>(flips) * std::log(p) +
                       static_cast<double>(n - flips) * std::log1p(-p);
            }
            case MutationSpec::Kind::Point:
                return flips == 1 ? -std::log(static_cast<double>(n))
                                  : -std::numeric_limits<double>::infinity();
            case MutationSpec::Kind::FlipDistribution:
                if (flips >= mutation.pmf.size() || mutation.pmf[flips] <= 0.0)
                    return -std::numeric_limits<double>::infinity();
                return std::log(mutation.pmf[flips]) - log_binomial(n, flips);
        }
        return -std::numeric_limits<double>::infinity();
    };

    // Absorbing chain on k = count of ones; transient states are 0..n-1.
    std::vector<double> transient(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const int fk = fitness_of(k);
        double stay = 0.0;
        std::vector<double> row(n + 1, 0.0);
        for (std::size_t a = 0; a <= k; ++a) {
            for (std::size_t b = 0; b <= n - k; ++b) {
                const std::size_t j = k - a + b;
                const double lp = log_binomial(k, a) + log_binomial(n - k, b) +
                                  log_specific_flip(a + b);
                if (!std::isfinite(lp)) continue;
                const double pr = std::exp(lp);
                if (fitness_of(j) >= fk) row[j] += pr;
                else stay += pr;  // offspring rejected, parent kept
            }
        }
        row[k] += stay;
        double row_sum = 0.0;
        for (double v : row) row_sum += v;
        if (std::abs(row_sum - 1.0) > 1e-10)
            throw std::runtime_error("opo_exact_expected_runtime: chain row does not sum to 1");
        for (std::size_t j = 0; j < n; ++j) transient[k * n + j] = row[j];
    }

    // (I - Q) h = 1 for the expected hitting time of state n.
    std::vector<double> a(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            a[k * n + j] = (k == j ? 1.0 : 0.0) - transient[k * n + j];
    const std::vector<double> hitting = solve_linear(std::move(a), std::vector<double>(n, 1.0));

    // Uniform start: Binomial(n, 1/2) over levels; +1 for the initial evaluation.
    double expected = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        expected += std::exp(log_binomial(n, k) -
                             static_cast<double>(n) * std::numbers::ln2) * hitting[k];
    return expected + 1.0;
}

double opo_asymptotic_runtime(std::size_t n, int r, const MutationSpec& mutation) {
    if (r < 1) throw std::invalid_argument("opo_asymptotic_runtime: r >= 1");
    const auto pmf = flip_count_pmf(mutation, n);
    double pr = 0.0;
    for (int j = 1; j <= r && static_cast<std::size_t>(j) < pmf.size(); ++j)
        pr += pmf[static_cast<std::size_t>(j)];
    if (pr <= 0.0) throw std::invalid_argument("opo_asymptotic_runtime: Pr(1<=xi<=r) = 0");
    double r_factorial = 1.0;
    for (int j = 2; j <= r; ++j) r_factorial *= j;
    return std::pow(static_cast<double>(n), r) / (r_factorial * pr);
}

} // namespace plateau::theory
