// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file channels.hpp
 * @brief One-body unitaries, fermion-removal and occupancy measurements, the
 *        M-fermion transfer map into an empty register, and the reports that
 *        check the majorization and entropy relations they obey.
 */

#pragma once

#include <mbent/entanglement.hpp>
#include <mbent/fock.hpp>
#include <mbent/mbody.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mbent {

/// Outcomes with probability below this are dropped.
inline constexpr double kMinOutcomeProbability = 1e-14;

/// Mixed-state channel paths are limited to D <= kMaxMixedModes.
inline constexpr int kMaxMixedModes = 10;

// ---------------------------------------------------------------------------
// Unitaries
// ---------------------------------------------------------------------------

/// c+_i -> sum_j U(j, i) c+_j. Throws std::invalid_argument unless U is a D x D unitary.
[[nodiscard]] PureState one_body_unitary(const PureState& psi, const Matrix& U, double tol = 1e-10);
[[nodiscard]] DensityOperator one_body_unitary(const DensityOperator& rho, const Matrix& U, double tol = 1e-10);

/// U^(M) rho^(M) U^(M)+ with U^(M) the M-th compound matrix.
[[nodiscard]] MBodyDM transform_mbody(const MBodyDM& dm, const Matrix& U);

// ---------------------------------------------------------------------------
// Measurements
// ---------------------------------------------------------------------------

struct OutcomeLabel {
    enum class Kind { Mode, Subset, Occupancy, MapIndex };
    Kind kind = Kind::Mode;
    int mode = -1;          ///< Mode, Occupancy
    Mask subset = 0;        ///< Subset
    bool occupied = false;  ///< Occupancy
    int index = -1;         ///< MapIndex

    [[nodiscard]] std::string to_string() const;
};

template <class State>
struct MeasurementOutcome {
    OutcomeLabel label;
    double probability = 0.0;
    State post_state;
};

using PureOutcome = MeasurementOutcome<PureState>;
using MixedOutcome = MeasurementOutcome<DensityOperator>;

/// Kraus operators c_j / sqrt(N); one outcome per mode with nonzero probability.
[[nodiscard]] std::vector<PureOutcome> measure_single_fermion(const PureState& psi);
[[nodiscard]] std::vector<MixedOutcome> measure_single_fermion(const DensityOperator& rho);

/// Kraus operators C_beta / sqrt(binom(N, L)) over L-subsets beta.
[[nodiscard]] std::vector<PureOutcome> measure_l_body(const PureState& psi, int L);
[[nodiscard]] std::vector<MixedOutcome> measure_l_body(const DensityOperator& rho, int L);

/// Projectors c+_j c_j and 1 - c+_j c_j.
[[nodiscard]] std::vector<PureOutcome> measure_occupancy(const PureState& psi, int mode);
[[nodiscard]] std::vector<MixedOutcome> measure_occupancy(const DensityOperator& rho, int mode);

struct EntropyCheck {
    std::string functional;
    double initial = 0.0;  ///< S_f of the initial normalized M-body DM
    double average = 0.0;  ///< sum_r p_r S_f of the post-measurement ones
    bool holds = false;    ///< initial >= average - tol
};

struct LevelReport {
    int M = 0;
    /// max |sum_r p_r rho^(M)_{r,n} - rho^(M)_n| entrywise
    double mixture_deviation = 0.0;
    Spectrum initial;  ///< lambda(rho^(M)_n)
    Spectrum average;  ///< sum_r p_r lambda(rho^(M)_{r,n})
    MajorizationVerdict verdict;
    bool majorized = false;  ///< initial is majorized by average
    std::vector<EntropyCheck> entropies;
};

struct MeasurementReport {
    std::string channel;
    std::size_t outcomes = 0;
    double total_probability = 0.0;
    std::vector<LevelReport> levels;

    /// Probabilities complete, mixture identities within mixture_tol, every
    /// level majorized and every entropy check holding.
    [[nodiscard]] bool all_hold(double probability_tol = 1e-10, double mixture_tol = 1e-12) const;
};

/// Evaluates the M-body relations between `psi` and the outcome ensemble for
/// each requested M (1 <= M <= particles of the post states).
[[nodiscard]] MeasurementReport verify_measurement(const PureState& psi, std::span<const PureOutcome> outcomes,
                                                   std::span<const int> Ms, double tol = kMajorizationTol);
[[nodiscard]] MeasurementReport verify_measurement(const DensityOperator& rho,
                                                   std::span<const MixedOutcome> outcomes,
                                                   std::span<const int> Ms, double tol = kMajorizationTol);

// ---------------------------------------------------------------------------
// Transfer maps
// ---------------------------------------------------------------------------

/**
 * Kraus family T^r, each binom(D_A, M) x binom(D, M), taking M fermions out of
 * the D system modes into D_A register modes. The Fock-space Kraus operator is
 * binom(N, M)^-1/2 sum T^r(mu, alpha) C+_mu C_alpha.
 */
struct TransferMap {
    int D = 0;
    int D_A = 0;
    int M = 0;
    std::vector<Matrix> kraus;

    /// max |sum_r T^r+ T^r - 1| entrywise.
    [[nodiscard]] double completeness_deviation() const;
    /// Throws std::invalid_argument on shape errors and std::domain_error on a
    /// completeness violation beyond tol.
    void validate(double tol = 1e-10) const;
};

/// Single Kraus operator embedding each system M-subset into the same register
/// subset. Requires D_A >= D.
[[nodiscard]] TransferMap uniform_transfer_map(int D, int D_A, int M);

/// T^alpha = e_0 e_alpha^T: one outcome per system M-subset alpha, always
/// landing on the first register M-subset.
[[nodiscard]] TransferMap mode_tagged_transfer_map(int D, int D_A, int M);

/// `outcomes` blocks of a random isometry; requires outcomes * binom(D_A, M) >= binom(D, M).
[[nodiscard]] TransferMap random_transfer_map(int D, int D_A, int M, int outcomes, std::uint64_t seed);

/**
 * N-fermion state over D + D_A modes: system modes [0, D), register modes
 * [D, D + D_A). Every amplitude has exactly M fermions in the register.
 */
struct BipartiteState {
    int D = 0;
    int D_A = 0;
    int M = 0;
    PureState joint{1, 0};

    /// Throws std::domain_error when an amplitude has the wrong register count.
    void validate() const;
    /// Gamma^r(mu, beta) reconstructed from the joint amplitudes.
    [[nodiscard]] Matrix coefficients() const;
};

using MapOutcome = MeasurementOutcome<BipartiteState>;

/// Outcomes r with p_r = Tr(Gamma^r+ Gamma^r) and normalized post states.
[[nodiscard]] std::vector<MapOutcome> apply_transfer_map(const PureState& psi, const TransferMap& map);

/// Register M-body state Gamma Gamma+ (unit trace, over register M-subsets).
[[nodiscard]] MBodyDM reduced_state_A(const BipartiteState& s);
/// System (N-M)-body state Gamma^T Gamma^* (unit trace).
[[nodiscard]] MBodyDM reduced_state_B(const BipartiteState& s);

struct TransferReport {
    std::size_t outcomes = 0;
    double total_probability = 0.0;
    Spectrum initial;  ///< lambda(rho^(M)_n)
    Spectrum average;  ///< sum_r p_r lambda(rho_A^r), zero-padded
    MajorizationVerdict verdict;
    bool majorized = false;
    bool saturated = false;  ///< verdict Equivalent
    std::vector<EntropyCheck> entropies;
};

[[nodiscard]] TransferReport verify_transfer_majorization(const PureState& psi, const TransferMap& map,
                                                          double tol = kMajorizationTol);

} // namespace mbent
