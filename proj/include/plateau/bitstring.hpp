#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plateau/rng.hpp"

namespace plateau {

/// Fixed-length binary genotype, packed into 64-bit words.
/// Immutable by convention once handed to the engine; padding bits in the
/// last word are kept zero so popcount and comparisons work word-wise.
class Bitstring {
public:
    explicit Bitstring(std::size_t n)
        : n_(n), words_((n + 63) / 64, 0) {
        if (n == 0) throw std::invalid_argument("Bitstring: length must be positive");
    }

    static Bitstring zeros(std::size_t n) { return Bitstring(n); }

    static Bitstring ones(std::size_t n) {
        Bitstring x(n);
        for (auto& w : x.words_) w = ~0ULL;
        x.clear_padding();
        return x;
    }

    static Bitstring random(std::size_t n, RandomSource& rng) {
        Bitstring x(n);
        for (auto& w : x.words_) w = rng.next_u64();
        x.clear_padding();
        return x;
    }

    /// Parse "10110" (index 0 is the leftmost character).
    static Bitstring from_string(std::string_view s) {
        Bitstring x(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') x.set(i, true);
            else if (s[i] != '0') throw std::invalid_argument("Bitstring: expected '0' or '1'");
        }
        return x;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }

    void set(std::size_t i, bool v) {
        const std::uint64_t m = 1ULL << (i & 63);
        if (v) words_[i >> 6] |= m;
        else words_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    Bitstring complemented() const {
        Bitstring y(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) y.words_[i] = ~words_[i];
        y.clear_padding();
        return y;
    }

    void xor_with(const Bitstring& other) {
        check_same_length(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend std::size_t hamming(const Bitstring& x, const Bitstring& y) {
        x.check_same_length(y);
        std::size_t c = 0;
        for (std::size_t i = 0; i < x.words_.size(); ++i)
            c += std::popcount(x.words_[i] ^ y.words_[i]);
        return c;
    }

    friend bool operator==(const Bitstring& x, const Bitstring& y) {
        return x.n_ == y.n_ && x.words_ == y.words_;
    }

    friend bool operator<(const Bitstring& x, const Bitstring& y) {
        if (x.n_ != y.n_) return x.n_ < y.n_;
        return x.words_ < y.words_;
    }

private:
    void check_same_length(const Bitstring& other) const {
        if (n_ != other.n_)
            throw std::invalid_argument("Bitstring: length mismatch");
    }

    void clear_padding() {
        if (n_ & 63) words_.back() &= (1ULL << (n_ & 63)) - 1;
    }

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

inline std::size_t count_ones(const Bitstring& x) { return x.count_ones(); }

} // namespace plateau
