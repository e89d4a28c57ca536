// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/states.hpp>
#include <mbent/random.hpp>

#include <cmath>
#include <stdexcept>

namespace mbent {

namespace {

void check_even_modes(int D) {
    if (D < 2 || D % 2 != 0)
        throw std::invalid_argument("pair states need an even mode count, got D=" + std::to_string(D));
}

void check_pair_count(int D, int k) {
    check_even_modes(D);
    if (k < 0 || k > D / 2)
        throw std::invalid_argument("pair count k=" + std::to_string(k) + " outside [0, D/2]");
}

} // namespace

PureState make_slater(int D, std::span<const int> occupied) {
    const Mask m = mask_from_modes(occupied, D);
    PureState psi(D, popcount(m));
    psi.add(m, 1.0);
    return psi;
}

PureState make_pair_condensate(int D, int k) {
    check_pair_count(D, k);
    const double amp = 1.0 / std::sqrt(static_cast<double>(binom(D / 2, k)));
    PureState psi(D, 2 * k);
    for_each_subset_of(low_bits(D / 2), k, [&](Mask pairs) {
        Mask m = 0;
        for (Mask p = pairs; p; p &= p - 1) m |= Mask{3} << (2 * std::countr_zero(p));
        psi.add(m, amp);
    });
    return psi;
}

PureState make_ghz(int D) {
    check_even_modes(D);
    PureState psi(D, D / 2);
    const Mask low = low_bits(D / 2);
    psi.add(low, 1.0 / std::sqrt(2.0));
    psi.add(low << (D / 2), 1.0 / std::sqrt(2.0));
    return psi;
}

PureState make_odd_pair_condensate(int D, int k) {
    check_pair_count(D, k);
    const PureState even = make_pair_condensate(D, k);
    PureState embedded(D + 1, 2 * k);
    for (const auto& [m, a] : even.amplitudes()) embedded.add(m, a);
    const LadderOp op = create(D);
    return apply_operator_string(std::span(&op, 1), embedded);
}

PureState make_two_fermion(const Matrix& gamma) {
    if (gamma.rows() != gamma.cols()) throw std::invalid_argument("coefficient matrix is not square");
    const int D = static_cast<int>(gamma.rows());
    if ((gamma + gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("coefficient matrix is not antisymmetric");
    PureState psi(D, 2);
    for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j)
            if (gamma(i, j) != Complex{}) psi.add((Mask{1} << i) | (Mask{1} << j), gamma(i, j));
    psi.prune();
    if (psi.empty()) throw std::invalid_argument("coefficient matrix has zero norm");
    return psi.normalized();
}

PureState make_random(int D, int N, std::uint64_t seed) {
    const SubsetIndexer idx(D, N);
    if (idx.count() > kMaxDenseDim)
        throw std::length_error("random states are dense; sector binom(" + std::to_string(D) + ", " +
                                std::to_string(N) + ") is too large");
    Rng rng(seed);
    const Matrix v = random_gaussian(static_cast<Eigen::Index>(idx.count()), 1, rng);
    PureState psi(D, N);
    const auto masks = idx.masks();
    for (std::size_t i = 0; i < masks.size(); ++i) psi.add(masks[i], v(static_cast<Eigen::Index>(i), 0));
    return psi.normalized();
}

std::vector<OperatorTerm> pair_creator(int D) {
    check_even_modes(D);
    const double c = std::sqrt(2.0 / D);
    std::vector<OperatorTerm> terms;
    for (int i = 0; i < D / 2; ++i) terms.push_back({c, {create(2 * i), create(2 * i + 1)}});
    return terms;
}

std::vector<OperatorTerm> pair_annihilator(int D) {
    check_even_modes(D);
    const double c = std::sqrt(2.0 / D);
    std::vector<OperatorTerm> terms;
    for (int i = 0; i < D / 2; ++i) terms.push_back({c, {annihilate(2 * i + 1), annihilate(2 * i)}});
    return terms;
}

StateFamily parse_state_family(std::string_view name) {
    if (name == "slater") return StateFamily::Slater;
    if (name == "pair-condensate") return StateFamily::PairCondensate;
    if (name == "ghz") return StateFamily::Ghz;
    if (name == "odd-pair-condensate") return StateFamily::OddPairCondensate;
    if (name == "two-fermion") return StateFamily::TwoFermion;
    if (name == "random") return StateFamily::Random;
    throw std::invalid_argument("unknown state family '" + std::string(name) + "'");
}

std::string_view to_string(StateFamily f) noexcept {
    switch (f) {
    case StateFamily::Slater: return "slater";
    case StateFamily::PairCondensate: return "pair-condensate";
    case StateFamily::Ghz: return "ghz";
    case StateFamily::OddPairCondensate: return "odd-pair-condensate";
    case StateFamily::TwoFermion: return "two-fermion";
    case StateFamily::Random: return "random";
    }
    return "unknown";
}

PureState make_state(const StateFamilySpec& spec) {
    switch (spec.family) {
    case StateFamily::Slater: return make_slater(spec.D, spec.occupied);
    case StateFamily::PairCondensate: return make_pair_condensate(spec.D, spec.k);
    case StateFamily::Ghz: return make_ghz(spec.D);
    case StateFamily::OddPairCondensate: return make_odd_pair_condensate(spec.D, spec.k);
    case StateFamily::TwoFermion: return make_two_fermion(spec.gamma);
    case StateFamily::Random: return make_random(spec.D, spec.N, spec.seed);
    }
    throw std::invalid_argument("unknown state family");
}

} // namespace mbent
