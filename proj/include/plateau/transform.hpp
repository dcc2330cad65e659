#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "plateau/bitstring.hpp"
#include "plateau/rng.hpp"

namespace plateau {

/// Hamming-distance-preserving instance transform: a position permutation
/// followed by an XOR mask. Output bit i = x[permutation[i]] ^ mask[i].
struct InstanceTransform {
    Bitstring mask;
    std::vector<std::uint32_t> permutation;

    InstanceTransform(Bitstring m, std::vector<std::uint32_t> perm)
        : mask(std::move(m)), permutation(std::move(perm)) {
        if (mask.size() != permutation.size())
            throw std::invalid_argument("InstanceTransform: mask/permutation size mismatch");
        std::vector<bool> seen(permutation.size(), false);
        for (auto p : permutation) {
            if (p >= permutation.size() || seen[p])
                throw std::invalid_argument("InstanceTransform: permutation is not a bijection");
            seen[p] = true;
        }
    }

    static InstanceTransform identity(std::size_t n) {
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        return InstanceTransform(Bitstring::zeros(n), std::move(perm));
    }

    static InstanceTransform random(std::size_t n, RandomSource& rng) {
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
        return InstanceTransform(Bitstring::random(n, rng), std::move(perm));
    }

    std::size_t size() const { return permutation.size(); }

    bool is_identity() const {
        for (std::size_t i = 0; i < permutation.size(); ++i)
            if (permutation[i] != i || mask.get(i)) return false;
        return true;
    }

    /// The transform S with S(T(x)) = x for all x.
    InstanceTransform inverse() const {
        const std::size_t n = size();
        std::vector<std::uint32_t> inv(n);
        Bitstring inv_mask = Bitstring::zeros(n);
        for (std::size_t i = 0; i < n; ++i) {
            inv[permutation[i]] = static_cast<std::uint32_t>(i);
            inv_mask.set(permutation[i], mask.get(i));
        }
        return InstanceTransform(std::move(inv_mask), std::move(inv));
    }
};

inline Bitstring apply_transform(const InstanceTransform& t, const Bitstring& x) {
    if (t.size() != x.size())
        throw std::invalid_argument("apply_transform: dimension mismatch");
    Bitstring y = Bitstring::zeros(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y.set(i, x.get(t.permutation[i]) ^ t.mask.get(i));
    return y;
}

} // namespace plateau
