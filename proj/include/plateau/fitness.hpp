#pragma once

#include <optional>
#include <stdexcept>

#include "plateau/bitstring.hpp"
#include "plateau/transform.hpp"

namespace plateau {

enum class FitnessFamily { OneMax, Plateau };

/// OneMax or Plateau_r, with an optional instance transform applied before
/// the piecewise formula. Fitness values are exact integers.
class FitnessSpec {
public:
    FitnessSpec() : FitnessSpec(FitnessFamily::OneMax, 1, 0, {}) {}

    static FitnessSpec onemax(std::size_t n,
                              std::optional<InstanceTransform> transform = {}) {
        return FitnessSpec(FitnessFamily::OneMax, n, 0, std::move(transform));
    }

    static FitnessSpec plateau(std::size_t n, int r,
                               std::optional<InstanceTransform> transform = {}) {
        if (r < 2 || static_cast<std::size_t>(r) >= n)
            throw std::invalid_argument("FitnessSpec: plateau requires 2 <= r < n");
        return FitnessSpec(FitnessFamily::Plateau, n, r, std::move(transform));
    }

    FitnessFamily family() const { return family_; }
    std::size_t n() const { return n_; }
    int r() const { return r_; }
    const std::optional<InstanceTransform>& transform() const { return transform_; }

    /// Fitness of the count-of-ones level k, shared with the exact chain.
    int value_at_level(std::size_t k) const {
        if (family_ == FitnessFamily::OneMax) return static_cast<int>(k);
        const std::size_t edge = n_ - static_cast<std::size_t>(r_);
        if (k <= edge) return static_cast<int>(k);
        if (k < n_) return static_cast<int>(edge);
        return static_cast<int>(n_);
    }

    /// Count of ones after the instance transform; the level of x.
    std::size_t level_ones(const Bitstring& x) const {
        if (x.size() != n_)
            throw std::invalid_argument("FitnessSpec: dimension mismatch");
        if (!transform_ || transform_->is_identity()) return x.count_ones();
        return apply_transform(*transform_, x).count_ones();
    }

    int evaluate(const Bitstring& x) const { return value_at_level(level_ones(x)); }

    bool is_optimum(const Bitstring& x) const {
        return level_ones(x) == n_;
    }

    int optimum_value() const { return static_cast<int>(n_); }

    /// The unique optimal search point (pre-image of all-ones).
    Bitstring optimum_point() const {
        if (!transform_ || transform_->is_identity()) return Bitstring::ones(n_);
        return apply_transform(transform_->inverse(), Bitstring::ones(n_));
    }

    /// Levels at or above n-r count as "on the plateau" (r = 0 for OneMax,
    /// so only the optimum qualifies there).
    bool on_plateau_or_better(const Bitstring& x) const {
        return level_ones(x) >= n_ - static_cast<std::size_t>(r_);
    }

private:
    FitnessSpec(FitnessFamily family, std::size_t n, int r,
                std::optional<InstanceTransform> transform)
        : family_(family), n_(n), r_(r), transform_(std::move(transform)) {
        if (n == 0) throw std::invalid_argument("FitnessSpec: n must be positive");
        if (transform_ && transform_->size() != n)
            throw std::invalid_argument("FitnessSpec: transform dimension mismatch");
    }

    FitnessFamily family_;
    std::size_t n_;
    int r_;
    std::optional<InstanceTransform> transform_;
};

} // namespace plateau
