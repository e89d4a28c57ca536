// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file combinatorics.hpp
 * @brief Occupation bitmasks, exact binomials and lexicographic subset ranking.
 *
 * A basis state of the N-fermion sector over D modes is stored as a 64-bit mask
 * (bit i set <=> mode i occupied). Subsets of modes are ordered lexicographically
 * by their sorted index tuples; that order fixes every row/column index used by
 * the density-matrix code.
 */

#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mbent {

using Mask = std::uint64_t;

inline constexpr int kMaxModes = 63;

[[nodiscard]] constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

[[nodiscard]] constexpr Mask low_bits(int n) noexcept {
    return n <= 0 ? Mask{0} : (n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1);
}

[[nodiscard]] constexpr bool test_bit(Mask m, int i) noexcept { return (m >> i) & 1U; }

/// Number of occupied modes strictly below `i`.
[[nodiscard]] constexpr int popcount_below(Mask m, int i) noexcept {
    return popcount(m & low_bits(i));
}

/// Mask from a list of distinct modes in [0, D). Throws std::invalid_argument.
[[nodiscard]] Mask mask_from_modes(std::span<const int> modes, int D);

/// Sorted list of occupied modes.
[[nodiscard]] std::vector<int> modes_of(Mask m);

/// Exact binomial coefficient; 0 outside 0 <= k <= n. Throws std::overflow_error
/// when the value does not fit in 64 bits.
[[nodiscard]] std::uint64_t binom(int n, int k);

/// Lexicographic rank of a strictly increasing tuple of modes in [0, D).
[[nodiscard]] std::uint64_t subset_rank(std::span<const int> tuple, int D);

/// Inverse of subset_rank for M-element subsets of {0, ..., D-1}.
[[nodiscard]] std::vector<int> subset_unrank(std::uint64_t index, int D, int M);

/**
 * Rank/unrank of M-subsets of D modes in mask form.
 *
 * Keeps a private binomial table so rank() is O(M) with no allocation; this is
 * the hot path of Gamma-matrix assembly.
 */
class SubsetIndexer {
public:
    SubsetIndexer(int D, int M);

    [[nodiscard]] int modes() const noexcept { return D_; }
    [[nodiscard]] int subset_size() const noexcept { return M_; }
    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

    /// Rank of a mask with exactly M bits below D. Not range-checked.
    [[nodiscard]] std::uint64_t rank(Mask m) const noexcept;
    [[nodiscard]] Mask unrank(std::uint64_t index) const;

    /// All M-subsets in canonical order.
    [[nodiscard]] std::vector<Mask> masks() const;

private:
    [[nodiscard]] std::uint64_t c(int n, int k) const noexcept {
        return (k < 0 || n < k) ? 0 : table_[static_cast<std::size_t>(n) * (M_ + 2) + k];
    }

    int D_;
    int M_;
    std::uint64_t count_;
    std::vector<std::uint64_t> table_;
};

/// Calls fn(sub) for every submask of `set` with exactly `k` bits, in
/// lexicographic order of the chosen mode tuples.
template <class Fn>
void for_each_subset_of(Mask set, int k, Fn&& fn) {
    const auto modes = modes_of(set);
    const int n = static_cast<int>(modes.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        Mask sub = 0;
        for (int i : idx) sub |= Mask{1} << modes[i];
        fn(sub);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace mbent
