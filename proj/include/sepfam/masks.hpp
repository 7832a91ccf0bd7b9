// Subsets of a small ground set packed into machine words.
// Ground sets are capped at 30 elements so every subset fits a uint32_t
// and powersets stay enumerable at desk scale.
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepfam {

using Mask = std::uint32_t;

inline constexpr int kMaxGroundSize = 30;

struct GroundSet {
    int n = 0;

    GroundSet() = default;
    explicit GroundSet(int n_elements) : n(n_elements) {
        if (n < 1 || n > kMaxGroundSize)
            throw std::invalid_argument("GroundSet: size must be in [1, 30]");
    }

    [[nodiscard]] Mask full_mask() const { return n == 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }
    [[nodiscard]] std::uint64_t subset_count() const { return 1ull << n; }
    [[nodiscard]] bool contains(Mask a) const { return (a & ~full_mask()) == 0; }
};

inline int popcount(Mask a) { return std::popcount(a); }
inline bool test_bit(Mask a, int i) { return (a >> i) & 1u; }
inline Mask bit(int i) { return Mask(1) << i; }

// Elements of a mask in ascending order.
inline std::vector<int> mask_elements(Mask a) {
    std::vector<int> out;
    while (a) {
        out.push_back(std::countr_zero(a));
        a &= a - 1;
    }
    return out;
}

inline Mask mask_of(const std::vector<int>& elements) {
    Mask a = 0;
    for (int e : elements) {
        if (e < 0 || e >= 32) throw std::invalid_argument("mask_of: element out of range");
        a |= bit(e);
    }
    return a;
}

// Lowercase hex with 0x prefix, e.g. {0,2} -> "0x5".
inline std::string mask_to_hex(Mask a) {
    static const char* digits = "0123456789abcdef";
    if (a == 0) return "0x0";
    std::string body;
    while (a) {
        body.insert(body.begin(), digits[a & 0xf]);
        a >>= 4;
    }
    return "0x" + body;
}

inline Mask mask_from_hex(const std::string& s) {
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        throw std::invalid_argument("mask_from_hex: expected 0x-prefixed hex, got '" + s + "'");
    std::uint64_t v = 0;
    for (size_t i = 2; i < s.size(); ++i) {
        char c = s[i];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("mask_from_hex: bad digit in '" + s + "'");
        v = (v << 4) | unsigned(d);
        if (v > 0xffffffffull) throw std::invalid_argument("mask_from_hex: value too large in '" + s + "'");
    }
    return Mask(v);
}

// All k-element subsets of {0..n-1} in increasing numeric (= colex) order
// via Gosper's hack.
inline std::vector<Mask> k_subsets(int n, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > n) return out;
    if (k == 0) return {Mask(0)};
    Mask v = (Mask(1) << k) - 1;
    const Mask limit = Mask(1) << n;
    while (v < limit) {
        out.push_back(v);
        Mask t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
        if (v == 0) break;
    }
    return out;
}

}  // namespace sepfam
