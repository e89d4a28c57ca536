// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file states.hpp
 * @brief Constructors for the concrete N-fermion state families.
 *
 * Pairs are the contiguous modes (2i, 2i+1). The odd pair condensate places
 * its extra fermion in the appended highest mode D.
 */

#pragma once

#include <mbent/fock.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbent {

[[nodiscard]] PureState make_slater(int D, std::span<const int> occupied);

/// Uniform superposition of all binom(D/2, k) products of k contiguous pairs.
[[nodiscard]] PureState make_pair_condensate(int D, int k);

/// (|modes 0..D/2-1> + |modes D/2..D-1>) / sqrt(2).
[[nodiscard]] PureState make_ghz(int D);

/// c+_D applied to the pair condensate embedded in D + 1 modes.
[[nodiscard]] PureState make_odd_pair_condensate(int D, int k);

/// Two-fermion state with amplitudes gamma(i, j), i < j, for an antisymmetric
/// D x D matrix. Rescaled to unit norm; throws on a non-antisymmetric or zero input.
[[nodiscard]] PureState make_two_fermion(const Matrix& gamma);

/// Dense complex-Gaussian state over the whole (D, N) sector, normalized.
/// Deterministic in `seed`.
[[nodiscard]] PureState make_random(int D, int N, std::uint64_t seed);

/// The collective pair creator sqrt(2/D) sum_i c+_{2i} c+_{2i+1}.
[[nodiscard]] std::vector<OperatorTerm> pair_creator(int D);
/// Its adjoint sqrt(2/D) sum_i c_{2i+1} c_{2i}.
[[nodiscard]] std::vector<OperatorTerm> pair_annihilator(int D);

enum class StateFamily { Slater, PairCondensate, Ghz, OddPairCondensate, TwoFermion, Random };

[[nodiscard]] StateFamily parse_state_family(std::string_view name);
[[nodiscard]] std::string_view to_string(StateFamily f) noexcept;

/// Family tag plus the parameters the chosen family reads.
struct StateFamilySpec {
    StateFamily family = StateFamily::Slater;
    int D = 0;
    int N = 0;                    ///< random
    int k = 0;                    ///< pair-condensate, odd-pair-condensate
    std::vector<int> occupied;    ///< slater
    Matrix gamma;                 ///< two-fermion
    std::uint64_t seed = 0;       ///< random
};

[[nodiscard]] PureState make_state(const StateFamilySpec& spec);

} // namespace mbent
