#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "plateau/mutation.hpp"

namespace plateau::theory {

/// Count-of-ones level partition used by the upper-bound arguments.
/// PlateauLevels: m = n-r+1, A_i = {|x| = i-1} for i < m, A_m = {|x| >= n-r}.
/// OneMaxLevels:  m = n+1,   A_i = {|x| = i-1},            A_m = {|x| = n}.
struct LevelPartition {
    enum class Kind { PlateauLevels, OneMaxLevels };

    Kind kind;
    std::size_t n;
    int r;          // PlateauLevels only
    std::size_t m;  // level count

    /// 1-based level index of a point with `ones` one-bits.
    std::size_t level_of(std::size_t ones) const;
};

LevelPartition plateau_levels(std::size_t n, int r, LevelPartition::Kind kind);

/// Inputs to the level-based and up-drift bounds.
struct LevelParams {
    std::vector<double> s;  // s_1 .. s_{m-1}, per-level upgrade probabilities
    double p0 = 0.0;        // no-degradation probability
    double gamma0 = 0.25;
    double delta = 1.0;
    double lambda = 0.0;
    double C = 1.0;         // constant in condition (M4')

    double s_star() const;
};

struct BoundCondition {
    std::string name;
    bool holds = false;
    double margin = 0.0;  // positive iff holds
};

struct BoundReport {
    std::string name;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> values;  // named auxiliaries
    std::vector<BoundCondition> conditions;
};

/// Level-based bound on the expected number of generations until gamma0 *
/// lambda individuals occupy the top level. Also evaluates condition (M4).
BoundReport level_based_bound(const LevelParams& p, std::size_t m);

/// Multiplicative up-drift bound, reported as an order expression with
/// leading constant 1. Logs are base 2.
BoundReport updrift_bound(const LevelParams& p, std::size_t m);

/// Smallest integer lambda satisfying condition (M4'), by fixed-point
/// iteration from lambda = 16.
std::uint64_t lambda_floor_M4prime(const LevelParams& p, std::size_t m);

struct HighPressureParams {
    std::uint64_t k_min = 0;
    double ratio_min = 0.0;
    double expected_generations = 0.0;
};

/// High-selection-pressure regime: minimal tournament size, minimal
/// lambda/mu ratio, and the expected-generation bound e*m.
HighPressureParams high_pressure_params(std::size_t m, double s_star);

struct PressureFloors {
    std::uint64_t k_min = 0;
    double ratio_min = 0.0;
};

/// Selection-pressure floors for single-bit-upgrade levels on a size-n cube:
/// k >= n(1+ln n)e / Pr(xi=1) and lambda/mu >= n(1+ln n) / Pr(xi=1).
PressureFloors theorem3_params(std::size_t n, double p_xi1);

/// Negative-drift feasibility: psi = ln(alpha)/chi + delta must stay below 1
/// and b(n)/n below min{1/5, 1/2 - sqrt(psi(2-psi)/4)}.
BoundReport negative_drift_report(double alpha, double chi, double delta, std::size_t n);

/// True iff the maximal reproductive rate stays below e^chi - delta, the
/// regime where polynomial-optima functions need exponential time.
bool pk10_holds(double alpha, double chi, double delta);

struct ApproximationLimits {
    double rho = 0.0;    // ln(2)/chi
    double M = 0.0;      // fraction-of-n ceiling for b(n)
    double z = 0.0;      // zero-bit floor the EA is unlikely to cross
    double w_max = 0.0;  // largest approximation slack covered, (1-rho)^2/2
};

/// Requires chi > ln 2. M is computed through both algebraic forms and
/// cross-checked to 1e-10.
ApproximationLimits approximation_limits(double chi, double epsilon, std::size_t n);

/// Reproductive-rate bound under fitness-proportionate selection when the
/// population ones-sum stays above (1-eps')*lambda*(n-r)/2:
/// 2n / ((1-eps')(n-r)).
double fprop_alpha_bound(std::size_t n, int r, double eps_prime);

/// Exact expected evaluation count of the elitist (1+1) EA on Plateau_r
/// (r >= 2) or OneMax (r = 0), from a uniform start, via the absorbing
/// count-of-ones Markov chain. n <= 200; mutation must be unbiased (all
/// MutationSpec kinds are).
double opo_exact_expected_runtime(std::size_t n, int r, const MutationSpec& mutation);

/// The reference asymptote n^r / (r! * Pr(1 <= xi <= r)).
double opo_asymptotic_runtime(std::size_t n, int r, const MutationSpec& mutation);

} // namespace plateau::theory
