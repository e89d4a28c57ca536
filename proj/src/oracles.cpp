// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/combinatorics.hpp>
#include <mbent/oracles.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mbent {

namespace {

double dbinom(int n, int k) { return static_cast<double>(binom(n, k)); }

void check_even(int D) {
    if (D < 2 || D % 2 != 0) throw std::invalid_argument("D=" + std::to_string(D) + " must be even and >= 2");
}

// Zero eigenvalues are implicit; coinciding branches share one entry.
void add_entry(AnalyticSpectrum& s, double value, std::uint64_t mult) {
    if (mult == 0 || value == 0.0) return;
    for (auto& [v, m] : s.entries)
        if (std::abs(v - value) <= 1e-12 * std::max(1.0, std::abs(value))) {
            m += mult;
            return;
        }
    s.entries.emplace_back(value, mult);
}

} // namespace

double AnalyticSpectrum::sum() const {
    double acc = 0.0;
    for (const auto& [v, m] : entries) acc += v * static_cast<double>(m);
    return acc;
}

double AnalyticSpectrum::max() const {
    double best = 0.0;
    for (const auto& [v, m] : entries) best = std::max(best, v);
    return best;
}

std::uint64_t AnalyticSpectrum::total_multiplicity() const {
    std::uint64_t n = 0;
    for (const auto& [v, m] : entries) n += m;
    return n;
}

std::vector<double> AnalyticSpectrum::expanded(std::size_t length) const {
    std::vector<double> out;
    for (const auto& [v, m] : entries) out.insert(out.end(), m, v);
    std::sort(out.begin(), out.end(), std::greater<>());
    if (length == 0) length = std::max<std::size_t>(out.size(), binom(D, M));
    if (out.size() < length) out.resize(length, 0.0);
    return out;
}

AnalyticSpectrum pair_condensate_spectrum(int D, int k, int M) {
    check_even(D);
    if (k < 0 || k > D / 2) throw std::invalid_argument("k=" + std::to_string(k) + " outside [0, D/2]");
    AnalyticSpectrum s{D, 2 * k, M, {}};
    const double d = D;
    switch (M) {
    case 1:
        add_entry(s, 2.0 * k / d, static_cast<std::uint64_t>(D));
        break;
    case 2:
        if (D < 4) throw std::invalid_argument("M=2 pair-condensate spectrum needs D >= 4");
        add_entry(s, k * (1.0 - 2.0 * (k - 1) / d), 1);
        add_entry(s, 4.0 * k * (k - 1) / (d * (d - 2)), binom(D, 2) - 1);
        break;
    case 3:
        if (D <= 4) throw std::invalid_argument("M=3 pair-condensate spectrum needs D > 4");
        add_entry(s, 2.0 * k * (k - 1) * (1.0 - 2.0 * (k - 1) / d) / (d - 2), static_cast<std::uint64_t>(D));
        add_entry(s, 8.0 * k * (k - 1) * (k - 2) / (d * (d - 2) * (d - 4)), binom(D, 3) - static_cast<std::uint64_t>(D));
        break;
    default:
        throw std::invalid_argument("pair-condensate spectrum is available for M in {1, 2, 3}");
    }
    std::stable_sort(s.entries.begin(), s.entries.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    return s;
}

double lambda_2m_max(int D, int k, int m) {
    check_even(D);
    if (m < 0 || m > k || k > D / 2)
        throw std::invalid_argument("lambda_2m_max needs 0 <= m <= k <= D/2");
    return dbinom(k, m) * dbinom(D / 2 - k + m, m) / dbinom(D / 2, m);
}

AnalyticSpectrum ghz_spectrum(int D, int M) {
    check_even(D);
    const int N = D / 2;
    if (M < 0 || M > N) throw std::invalid_argument("GHZ spectrum needs 0 <= M <= D/2");
    AnalyticSpectrum s{D, N, M, {}};
    if (M == 0 || M == N) add_entry(s, 1.0, 1);
    else add_entry(s, 0.5, 2 * binom(N, M));
    return s;
}

AnalyticSpectrum slater_spectrum(int N, int M) {
    if (N < 0 || M < 0 || M > N) throw std::invalid_argument("Slater spectrum needs 0 <= M <= N");
    AnalyticSpectrum s{N, N, M, {}};
    add_entry(s, 1.0, binom(N, M));
    return s;
}

AppendixBReport appendix_b_report(int D, int k) {
    check_even(D);
    if (D < 4) throw std::invalid_argument("appendix_b_report needs D >= 4");
    if (k < 1 || k > D / 2) throw std::invalid_argument("appendix_b_report needs 1 <= k <= D/2");
    AppendixBReport r;
    r.D = D;
    r.k = k;
    r.N = 2 * k;
    const double d = D;
    const double n = r.N;
    r.lambda_max = k * (1.0 - 2.0 * (k - 1) / d);
    r.p_occupied = n / d;
    r.p_empty = 1.0 - n / d;
    // The frozen pair itself is a unit eigenvalue of the occupied branch.
    r.occupied_branch = std::max(1.0, (n - 2.0) * (d + 2.0 - n) / (2.0 * (d - 2.0)));
    r.empty_branch = r.p_empty > 0.0 ? n * (d - n) / (2.0 * (d - 2.0)) : 0.0;
    r.average = r.p_occupied * r.occupied_branch + r.p_empty * r.empty_branch;
    r.violation = r.average < r.lambda_max - 1e-12;
    r.apc_post = (d + 2.0 - n) / ((d - 2.0) * (n - 1.0));
    r.apc_initial = (d + 2.0 - n) / (d * (n - 1.0));
    r.apc_holds = r.apc_post >= r.apc_initial - 1e-12;
    return r;
}

std::vector<Figure1Row> figure1_data(int D, std::span<const int> Ms) {
    check_even(D);
    if (D < 6) throw std::invalid_argument("figure1 needs D >= 6");
    std::vector<Figure1Row> rows;
    for (int M : Ms) {
        if (M < 1 || M > 4) throw std::invalid_argument("figure1 supports M in {1, 2, 3, 4}, got " + std::to_string(M));
        for (int k = 1; k <= D / 2 - 1; ++k) {
            double v = 0.0;
            if (M <= 2 * k) v = M == 4 ? lambda_2m_max(D, k, 2) : pair_condensate_spectrum(D, k, M).max();
            rows.push_back({k, M, v});
        }
    }
    return rows;
}

std::vector<std::pair<double, std::uint64_t>> cluster_spectrum(std::vector<double> values, double tol) {
    std::sort(values.begin(), values.end(), std::greater<>());
    std::vector<std::pair<double, std::uint64_t>> out;
    std::size_t i = 0;
    while (i < values.size()) {
        const double head = values[i];
        double acc = 0.0;
        std::size_t j = i;
        for (; j < values.size() && head - values[j] <= tol; ++j) acc += values[j];
        out.emplace_back(acc / static_cast<double>(j - i), j - i);
        i = j;
    }
    return out;
}

} // namespace mbent
