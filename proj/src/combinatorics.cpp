// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/combinatorics.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace mbent {

Mask mask_from_modes(std::span<const int> modes, int D) {
    Mask m = 0;
    for (int i : modes) {
        if (i < 0 || i >= D)
            throw std::invalid_argument("mode " + std::to_string(i) + " out of range [0, " +
                                        std::to_string(D) + ")");
        if (test_bit(m, i))
            throw std::invalid_argument("duplicate mode " + std::to_string(i));
        m |= Mask{1} << i;
    }
    return m;
}

std::vector<int> modes_of(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(m)));
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

std::uint64_t binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n-k+i) / i is exact at every step: it equals binom(n-k+i, i).
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binom(" + std::to_string(n) + ", " + std::to_string(k) +
                                      ") overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

void check_dims(int D, int M) {
    if (D < 0 || D > kMaxModes)
        throw std::invalid_argument("mode count D=" + std::to_string(D) + " outside [0, 63]");
    if (M < 0 || M > D)
        throw std::invalid_argument("subset size M=" + std::to_string(M) + " outside [0, D]");
}

} // namespace

std::uint64_t subset_rank(std::span<const int> tuple, int D) {
    const int M = static_cast<int>(tuple.size());
    check_dims(D, M);
    for (int i = 0; i < M; ++i) {
        if (tuple[i] < 0 || tuple[i] >= D)
            throw std::invalid_argument("subset entry " + std::to_string(tuple[i]) + " out of range");
        if (i > 0 && tuple[i] <= tuple[i - 1])
            throw std::invalid_argument("subset tuple is not strictly increasing");
    }
    Mask m = 0;
    for (int i : tuple) m |= Mask{1} << i;
    return SubsetIndexer(D, M).rank(m);
}

std::vector<int> subset_unrank(std::uint64_t index, int D, int M) {
    return modes_of(SubsetIndexer(D, M).unrank(index));
}

SubsetIndexer::SubsetIndexer(int D, int M) : D_(D), M_(M) {
    check_dims(D, M);
    const int width = M + 2;
    table_.assign(static_cast<std::size_t>(D + 1) * width, 0);
    for (int n = 0; n <= D; ++n) {
        table_[static_cast<std::size_t>(n) * width] = 1;
        for (int k = 1; k <= M + 1 && k <= n; ++k) {
            const auto up = static_cast<std::size_t>(n - 1) * width;
            table_[static_cast<std::size_t>(n) * width + k] = table_[up + k - 1] + table_[up + k];
        }
    }
    count_ = c(D, M);
}

std::uint64_t SubsetIndexer::rank(Mask m) const noexcept {
    // Subsets whose i-th element is j < c_i (earlier elements fixed) number
    // binom(D-1-j, M-i); summing over j collapses by the hockey-stick identity.
    std::uint64_t r = 0;
    int prev = -1;
    int i = 1;
    for (; m; m &= m - 1, ++i) {
        const int ci = std::countr_zero(m);
        r += c(D_ - prev - 1, M_ - i + 1) - c(D_ - ci, M_ - i + 1);
        prev = ci;
    }
    return r;
}

Mask SubsetIndexer::unrank(std::uint64_t index) const {
    if (index >= count_)
        throw std::out_of_range("subset index " + std::to_string(index) + " >= binom(" +
                                std::to_string(D_) + ", " + std::to_string(M_) + ")");
    Mask m = 0;
    int next = 0;
    for (int i = 1; i <= M_; ++i) {
        for (int cand = next;; ++cand) {
            const std::uint64_t block = c(D_ - 1 - cand, M_ - i);
            if (index < block) {
                m |= Mask{1} << cand;
                next = cand + 1;
                break;
            }
            index -= block;
        }
    }
    return m;
}

std::vector<Mask> SubsetIndexer::masks() const {
    std::vector<Mask> out;
    out.reserve(count_);
    for_each_subset_of(low_bits(D_), M_, [&](Mask s) { out.push_back(s); });
    return out;
}

} // namespace mbent
