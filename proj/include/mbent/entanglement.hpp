// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file entanglement.hpp
 * @brief Sorted spectra, majorization and trace-form entropies.
 */

#pragma once

#include <mbent/fock.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mbent {

/// Entries in [-kClampTol, 0) are treated as zero.
inline constexpr double kClampTol = 1e-10;

/// Default absolute tolerance on prefix sums.
inline constexpr double kMajorizationTol = 1e-9;

/**
 * Nonincreasing list of nonnegative reals.
 *
 * Construction sorts, clamps eigensolver noise in [-kClampTol, 0) to zero and
 * throws std::domain_error on anything more negative.
 */
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<double> values);

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double trace() const noexcept;
    [[nodiscard]] double max() const noexcept { return values_.empty() ? 0.0 : values_.front(); }

    /// Copy extended with zeros to length n (never truncates).
    [[nodiscard]] Spectrum padded(std::size_t n) const;
    [[nodiscard]] Spectrum scaled(double s) const;
    /// Copy divided by its trace; throws std::domain_error on zero trace.
    [[nodiscard]] Spectrum normalized() const;
    /// Entries above tol.
    [[nodiscard]] std::vector<double> nonzero(double tol = 1e-12) const;
    [[nodiscard]] std::vector<double> prefix_sums() const;

private:
    std::vector<double> values_;
};

/// sum_i w_i * s_i, entrywise after zero-padding to the longest.
[[nodiscard]] Spectrum weighted_sum(std::span<const std::pair<double, Spectrum>> terms);

enum class Verdict { FirstMoreMixed, SecondMoreMixed, Equivalent, Incomparable };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

struct MajorizationVerdict {
    Verdict verdict = Verdict::Incomparable;
    /// First prefix index k where sum_{<=k} a > sum_{<=k} b + tol (breaks a < b).
    std::optional<std::size_t> first_violation;
    /// First prefix index k where sum_{<=k} b > sum_{<=k} a + tol (breaks b < a).
    std::optional<std::size_t> second_violation;
    std::vector<double> prefix_a;
    std::vector<double> prefix_b;
    double tol = kMajorizationTol;
};

/// a is majorized by b (a more mixed) at tolerance tol, after zero-padding.
/// Traces are not checked.
[[nodiscard]] bool majorized_by(const Spectrum& a, const Spectrum& b, double tol = kMajorizationTol);

/// Throws std::invalid_argument when |Tr a - Tr b| > tol.
[[nodiscard]] MajorizationVerdict majorize_compare(const Spectrum& a, const Spectrum& b,
                                                   double tol = kMajorizationTol);

struct EntropyFunctional {
    std::string name;
    std::function<double(double)> f;
    std::string log_base;  ///< "2", "e" or "none"
};

[[nodiscard]] EntropyFunctional von_neumann();
/// -x ln x + (1 + x) ln(1 + x), natural logarithm.
[[nodiscard]] EntropyFunctional bosonic_like();
[[nodiscard]] EntropyFunctional linear_entropy();
[[nodiscard]] std::vector<EntropyFunctional> builtin_entropies();
/// Lookup by name: "von-neumann", "bosonic", "linear". Throws std::invalid_argument.
[[nodiscard]] EntropyFunctional entropy_functional(std::string_view name);

/// f(0) = 0 and the midpoint inequality on a uniform grid over [0, upper].
[[nodiscard]] bool is_concave_on_grid(const EntropyFunctional& f, double upper, int points = 200);

[[nodiscard]] double entropy(const Spectrum& s, const EntropyFunctional& f);

/// sum_nu f(lambda_nu) over the raw spectrum of rho^(M).
[[nodiscard]] double raw_entropy(const PureState& psi, int M, const EntropyFunctional& f);

/// sum_nu f(lambda_nu / binom(N, M)); requires 1 <= M <= N-1.
[[nodiscard]] double normalized_entropy(const PureState& psi, int M, const EntropyFunctional& f);

/// 2|G01 G23 - G02 G13 + G03 G12| for a normalized two-fermion state in four modes.
[[nodiscard]] double concurrence_d4(const PureState& psi);

/// (1 + sqrt(1 - C^2)) / 2 and (1 - sqrt(1 - C^2)) / 2.
[[nodiscard]] std::pair<double, double> concurrence_eigenvalues(double C);

/// sum_i q_i normalized_entropy(psi_i) for a user-supplied decomposition. Weights
/// are rescaled to sum to one and states to unit norm.
[[nodiscard]] double formation_upper_bound(std::span<const std::pair<double, PureState>> decomposition,
                                           int M, const EntropyFunctional& f);

} // namespace mbent
