// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Fermionic ladder operators on occupation masks, sparse pure states of
 *        definite particle number, and dense density operators over a sector.
 *
 * Amplitudes are stored for creation strings in ascending mode order,
 * c+_{i1} ... c+_{iN}|0> with i1 < ... < iN. Any other ordering is reduced to
 * that one through split_sign().
 */

#pragma once

#include <mbent/combinatorics.hpp>

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mbent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Amplitudes below this magnitude are dropped after arithmetic.
inline constexpr double kPruneEps = 1e-14;

struct SignedMask {
    Mask mask;
    int sign;

    friend bool operator==(const SignedMask&, const SignedMask&) = default;
};

/// c+_i acting on |mask>. Empty when mode i is occupied. Throws
/// std::out_of_range for i outside [0, D).
[[nodiscard]] std::optional<SignedMask> apply_create(int mode, Mask m, int D);

/// c_i acting on |mask>. Empty when mode i is empty.
[[nodiscard]] std::optional<SignedMask> apply_annihilate(int mode, Mask m, int D);

/**
 * Parity of the permutation taking the ascending order of `uni` to
 * (ascending alpha, ascending uni \ alpha).
 *
 * Equivalently, c+_alpha c+_beta |0> = split_sign(uni, alpha) c+_uni |0>.
 * Throws std::invalid_argument when alpha is not contained in uni.
 */
[[nodiscard]] int split_sign(Mask uni, Mask alpha);

/// Unchecked split_sign for the inner loops.
[[nodiscard]] inline int split_sign_unchecked(Mask uni, Mask alpha) noexcept {
    const Mask beta = uni & ~alpha;
    int crossings = 0;
    for (Mask a = alpha; a; a &= a - 1) crossings += popcount_below(beta, std::countr_zero(a));
    return (crossings & 1) ? -1 : 1;
}

/**
 * Pure state of N fermions in D modes, stored sparsely.
 *
 * Every stored mask has popcount N and no bit at or above D. The map is
 * ordered by mask value so iteration and serialization are deterministic.
 */
class PureState {
public:
    using AmplitudeMap = std::map<Mask, Complex>;

    PureState(int D, int N);

    [[nodiscard]] int modes() const noexcept { return D_; }
    [[nodiscard]] int particles() const noexcept { return N_; }
    [[nodiscard]] const AmplitudeMap& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] bool empty() const noexcept { return amps_.empty(); }

    [[nodiscard]] Complex amplitude(Mask m) const;

    /// Accumulates `value` onto the amplitude of `m` (validated).
    void add(Mask m, Complex value);

    [[nodiscard]] double norm_squared() const noexcept;
    [[nodiscard]] double norm() const noexcept;

    /// Copy scaled to unit norm. Throws std::domain_error on the zero state.
    [[nodiscard]] PureState normalized() const;

    /// Drops amplitudes with magnitude below eps.
    void prune(double eps = kPruneEps);

    PureState& operator+=(const PureState& other);
    PureState& operator-=(const PureState& other);
    PureState& operator*=(Complex s);

    friend PureState operator+(PureState a, const PureState& b) { return a += b; }
    friend PureState operator-(PureState a, const PureState& b) { return a -= b; }
    friend PureState operator*(Complex s, PureState a) { return a *= s; }

private:
    void check_same_sector(const PureState& other) const;

    int D_;
    int N_;
    AmplitudeMap amps_;
};

/// <a|b>, conjugate-linear in `a`. Throws std::invalid_argument on sector mismatch.
[[nodiscard]] Complex inner_product(const PureState& a, const PureState& b);

/// Largest |a_m - b_m| over the union of supports; sectors must agree.
[[nodiscard]] double max_abs_difference(const PureState& a, const PureState& b);

struct LadderOp {
    enum class Kind { Create, Annihilate };
    Kind kind;
    int mode;
};

[[nodiscard]] constexpr LadderOp create(int mode) noexcept { return {LadderOp::Kind::Create, mode}; }
[[nodiscard]] constexpr LadderOp annihilate(int mode) noexcept {
    return {LadderOp::Kind::Annihilate, mode};
}

/**
 * Applies the operator product ops[0] ops[1] ... ops[n-1] to `psi`
 * (rightmost factor acts first). The result is unnormalized and may be empty.
 * Throws std::invalid_argument if the resulting particle number leaves [0, D].
 */
[[nodiscard]] PureState apply_operator_string(std::span<const LadderOp> ops, const PureState& psi);

/// One term of a linear combination of operator strings.
struct OperatorTerm {
    Complex coeff;
    std::vector<LadderOp> ops;
};

/// Applies sum_t coeff_t * string_t. All strings must change N by the same amount.
[[nodiscard]] PureState apply_operator(std::span<const OperatorTerm> terms, const PureState& psi);

/// The annihilator C_alpha = c_{iM} ... c_{i1} of an ascending subset alpha.
[[nodiscard]] std::vector<LadderOp> subset_annihilator(Mask alpha);

/// The creator C+_alpha = c+_{i1} ... c+_{iM}.
[[nodiscard]] std::vector<LadderOp> subset_creator(Mask alpha);

/// Upper bound on the dimension of dense sector matrices.
inline constexpr std::uint64_t kMaxDenseDim = 4096;

/**
 * Density operator of definite particle number, dense over the full N-sector
 * basis in canonical (lexicographic) order.
 *
 * Trace is not forced to one: contraction maps produce unnormalized operators.
 * validate() checks hermiticity, positivity and optionally unit trace.
 */
class DensityOperator {
public:
    DensityOperator(int D, int N, Matrix matrix);

    static DensityOperator from_pure(const PureState& psi);
    /// sum_i q_i |psi_i><psi_i|; weights need not be normalized.
    static DensityOperator from_mixture(std::span<const std::pair<double, PureState>> terms);

    [[nodiscard]] int modes() const noexcept { return D_; }
    [[nodiscard]] int particles() const noexcept { return N_; }
    [[nodiscard]] const Matrix& matrix() const noexcept { return rho_; }
    [[nodiscard]] std::uint64_t dimension() const noexcept { return indexer_.count(); }
    [[nodiscard]] std::vector<Mask> basis() const { return indexer_.masks(); }
    [[nodiscard]] std::uint64_t index_of(Mask m) const noexcept { return indexer_.rank(m); }
    [[nodiscard]] Mask mask_at(std::uint64_t i) const { return indexer_.unrank(i); }

    [[nodiscard]] double trace() const { return rho_.trace().real(); }
    [[nodiscard]] DensityOperator normalized() const;

    /// Throws std::domain_error describing the first violated property.
    void validate(double tol = 1e-10, bool require_unit_trace = true) const;

private:
    int D_;
    int N_;
    SubsetIndexer indexer_;
    Matrix rho_;
};

} // namespace mbent
