// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracles.hpp
 * @brief Closed-form M-body spectra of pair condensates, GHZ-type states and
 *        Slater determinants, plus the occupancy-measurement bounds and the
 *        lambda_max(k) table.
 */

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mbent {

struct AnalyticSpectrum {
    int D = 0;
    int N = 0;
    int M = 0;
    /// (eigenvalue, multiplicity) of the nonzero eigenvalues, largest first.
    std::vector<std::pair<double, std::uint64_t>> entries;

    /// sum multiplicity * eigenvalue; equals binom(N, M).
    [[nodiscard]] double sum() const;
    [[nodiscard]] double max() const;
    [[nodiscard]] std::uint64_t total_multiplicity() const;
    /// Every eigenvalue repeated by multiplicity, nonincreasing, zero-padded to
    /// `length` (default binom(D, M)).
    [[nodiscard]] std::vector<double> expanded(std::size_t length = 0) const;
};

/// k contiguous pairs in D modes, M in {1, 2, 3}.
[[nodiscard]] AnalyticSpectrum pair_condensate_spectrum(int D, int k, int M);

/// binom(k, m) binom(D/2 - k + m, m) / binom(D/2, m): largest eigenvalue of rho^(2m).
[[nodiscard]] double lambda_2m_max(int D, int k, int m);

/// GHZ-type state of N = D/2 fermions: 1/2 with multiplicity 2 binom(N, M);
/// a single unit eigenvalue at M = 0 or M = N.
[[nodiscard]] AnalyticSpectrum ghz_spectrum(int D, int M);

/// binom(N, M) unit eigenvalues.
[[nodiscard]] AnalyticSpectrum slater_spectrum(int N, int M);

/// Largest rho^(2) eigenvalues around an occupancy measurement of a pair
/// condensate, and the single-fermion comparison of normalized maxima.
struct AppendixBReport {
    int D = 0;
    int k = 0;
    int N = 0;
    double lambda_max = 0.0;        ///< before the measurement
    double p_occupied = 0.0;        ///< N / D
    double p_empty = 0.0;           ///< 1 - N / D
    double occupied_branch = 0.0;   ///< top rho^(2) eigenvalue after finding the mode occupied
    double empty_branch = 0.0;      ///< same after finding it empty
    double average = 0.0;           ///< p_occupied * occupied + p_empty * empty
    bool violation = false;         ///< average < lambda_max
    double apc_post = 0.0;          ///< (D+2-N) / ((D-2)(N-1))
    double apc_initial = 0.0;       ///< (D+2-N) / (D(N-1))
    bool apc_holds = false;         ///< apc_post >= apc_initial
};

/// Requires D even, D >= 4 and 1 <= k <= D/2.
[[nodiscard]] AppendixBReport appendix_b_report(int D, int k);

struct Figure1Row {
    int k = 0;
    int M = 0;
    double lambda_max = 0.0;
};

/// Rows for k = 1 .. D/2 - 1 and each M in {1, 2, 3, 4}, ordered by M then k.
/// Zero when M exceeds the particle number 2k.
[[nodiscard]] std::vector<Figure1Row> figure1_data(int D, std::span<const int> Ms);

/// Groups a spectrum into (value, multiplicity) clusters; neighbours within
/// `tol` of a cluster's first member join it. Values are cluster means.
[[nodiscard]] std::vector<std::pair<double, std::uint64_t>> cluster_spectrum(std::vector<double> values,
                                                                             double tol = 1e-8);

} // namespace mbent
