// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/fock.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace mbent {

namespace {

void check_mode(int mode, int D) {
    if (mode < 0 || mode >= D)
        throw std::out_of_range("mode " + std::to_string(mode) + " outside [0, " + std::to_string(D) +
                                ")");
}

int parity_sign(int count) noexcept { return (count & 1) ? -1 : 1; }

} // namespace

std::optional<SignedMask> apply_create(int mode, Mask m, int D) {
    check_mode(mode, D);
    if (test_bit(m, mode)) return std::nullopt;
    return SignedMask{m | (Mask{1} << mode), parity_sign(popcount_below(m, mode))};
}

std::optional<SignedMask> apply_annihilate(int mode, Mask m, int D) {
    check_mode(mode, D);
    if (!test_bit(m, mode)) return std::nullopt;
    return SignedMask{m & ~(Mask{1} << mode), parity_sign(popcount_below(m, mode))};
}

int split_sign(Mask uni, Mask alpha) {
    if ((alpha & ~uni) != 0) throw std::invalid_argument("split_sign: alpha is not a subset of the union");
    return split_sign_unchecked(uni, alpha);
}

// ---------------------------------------------------------------------------
// PureState
// ---------------------------------------------------------------------------

PureState::PureState(int D, int N) : D_(D), N_(N) {
    if (D < 1 || D > kMaxModes)
        throw std::invalid_argument("mode count D=" + std::to_string(D) + " outside [1, 63]");
    if (N < 0 || N > D)
        throw std::invalid_argument("particle number N=" + std::to_string(N) + " outside [0, D]");
}

Complex PureState::amplitude(Mask m) const {
    const auto it = amps_.find(m);
    return it == amps_.end() ? Complex{} : it->second;
}

void PureState::add(Mask m, Complex value) {
    if ((m & ~low_bits(D_)) != 0)
        throw std::invalid_argument("mask has occupied modes at or above D");
    if (popcount(m) != N_)
        throw std::invalid_argument("mask popcount " + std::to_string(popcount(m)) +
                                    " differs from particle number " + std::to_string(N_));
    amps_[m] += value;
}

double PureState::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& [m, a] : amps_) s += std::norm(a);
    return s;
}

double PureState::norm() const noexcept { return std::sqrt(norm_squared()); }

PureState PureState::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw std::domain_error("cannot normalize the zero state");
    PureState out = *this;
    out *= Complex{1.0 / n};
    out.prune();
    return out;
}

void PureState::prune(double eps) {
    std::erase_if(amps_, [eps](const auto& kv) { return std::abs(kv.second) < eps; });
}

void PureState::check_same_sector(const PureState& other) const {
    if (other.D_ != D_ || other.N_ != N_)
        throw std::invalid_argument("sector mismatch: (D=" + std::to_string(D_) + ", N=" +
                                    std::to_string(N_) + ") vs (D=" + std::to_string(other.D_) +
                                    ", N=" + std::to_string(other.N_) + ")");
}

PureState& PureState::operator+=(const PureState& other) {
    check_same_sector(other);
    for (const auto& [m, a] : other.amps_) amps_[m] += a;
    prune();
    return *this;
}

PureState& PureState::operator-=(const PureState& other) {
    check_same_sector(other);
    for (const auto& [m, a] : other.amps_) amps_[m] -= a;
    prune();
    return *this;
}

PureState& PureState::operator*=(Complex s) {
    for (auto& [m, a] : amps_) a *= s;
    prune();
    return *this;
}

Complex inner_product(const PureState& a, const PureState& b) {
    if (a.modes() != b.modes() || a.particles() != b.particles())
        throw std::invalid_argument("inner_product: sector mismatch");
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    Complex s{};
    for (const auto& [m, x] : small.amplitudes()) {
        const auto it = large.amplitudes().find(m);
        if (it == large.amplitudes().end()) continue;
        s += (&small == &a) ? std::conj(x) * it->second : std::conj(it->second) * x;
    }
    return s;
}

double max_abs_difference(const PureState& a, const PureState& b) {
    const PureState d = a - b;
    double worst = 0.0;
    for (const auto& [m, x] : d.amplitudes()) worst = std::max(worst, std::abs(x));
    return worst;
}

// ---------------------------------------------------------------------------
// Operator strings
// ---------------------------------------------------------------------------

namespace {

int particle_shift(std::span<const LadderOp> ops) {
    int shift = 0;
    for (const auto& op : ops) shift += op.kind == LadderOp::Kind::Create ? 1 : -1;
    return shift;
}

/// Applies the string to a single basis mask; empty on Pauli blocking.
std::optional<SignedMask> apply_string_to_mask(std::span<const LadderOp> ops, Mask m, int D) {
    int sign = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const auto r = it->kind == LadderOp::Kind::Create ? apply_create(it->mode, m, D)
                                                          : apply_annihilate(it->mode, m, D);
        if (!r) return std::nullopt;
        m = r->mask;
        sign *= r->sign;
    }
    return SignedMask{m, sign};
}

} // namespace

PureState apply_operator_string(std::span<const LadderOp> ops, const PureState& psi) {
    const OperatorTerm term{Complex{1.0}, {ops.begin(), ops.end()}};
    return apply_operator(std::span<const OperatorTerm>(&term, 1), psi);
}

PureState apply_operator(std::span<const OperatorTerm> terms, const PureState& psi) {
    const int D = psi.modes();
    int shift = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const int s = particle_shift(terms[t].ops);
        if (t == 0) shift = s;
        else if (s != shift)
            throw std::invalid_argument("operator terms change the particle number differently");
        for (const auto& op : terms[t].ops) check_mode(op.mode, D);
    }
    const int N = psi.particles() + shift;
    if (N < 0 || N > D)
        throw std::invalid_argument("resulting particle number " + std::to_string(N) +
                                    " outside [0, D]");
    PureState out(D, N);
    for (const auto& term : terms) {
        for (const auto& [m, a] : psi.amplitudes()) {
            if (const auto r = apply_string_to_mask(term.ops, m, D))
                out.add(r->mask, term.coeff * static_cast<double>(r->sign) * a);
        }
    }
    out.prune();
    return out;
}

std::vector<LadderOp> subset_annihilator(Mask alpha) {
    std::vector<LadderOp> ops;
    const auto modes = modes_of(alpha);
    for (auto it = modes.rbegin(); it != modes.rend(); ++it) ops.push_back(annihilate(*it));
    return ops;
}

std::vector<LadderOp> subset_creator(Mask alpha) {
    std::vector<LadderOp> ops;
    for (int i : modes_of(alpha)) ops.push_back(create(i));
    return ops;
}

// ---------------------------------------------------------------------------
// DensityOperator
// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(int D, int N, Matrix matrix)
    : D_(D), N_(N), indexer_(D, N), rho_(std::move(matrix)) {
    if (D < 1 || D > kMaxModes) throw std::invalid_argument("mode count D outside [1, 63]");
    if (indexer_.count() > kMaxDenseDim)
        throw std::length_error("sector dimension binom(" + std::to_string(D) + ", " +
                                std::to_string(N) + ") exceeds the dense limit " +
                                std::to_string(kMaxDenseDim));
    const auto dim = static_cast<Eigen::Index>(indexer_.count());
    if (rho_.rows() != dim || rho_.cols() != dim)
        throw std::invalid_argument("density matrix is " + std::to_string(rho_.rows()) + "x" +
                                    std::to_string(rho_.cols()) + ", sector dimension is " +
                                    std::to_string(dim));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const std::pair<double, PureState> term{1.0, psi};
    return from_mixture(std::span(&term, 1));
}

DensityOperator DensityOperator::from_mixture(std::span<const std::pair<double, PureState>> terms) {
    if (terms.empty()) throw std::invalid_argument("empty mixture");
    const int D = terms.front().second.modes();
    const int N = terms.front().second.particles();
    const SubsetIndexer idx(D, N);
    if (idx.count() > kMaxDenseDim) throw std::length_error("sector too large for a dense density operator");
    const auto dim = static_cast<Eigen::Index>(idx.count());
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& [q, psi] : terms) {
        if (psi.modes() != D || psi.particles() != N)
            throw std::invalid_argument("mixture components live in different sectors");
        if (q < 0.0) throw std::invalid_argument("negative mixture weight");
        Vector v = Vector::Zero(dim);
        for (const auto& [m, a] : psi.amplitudes()) v(static_cast<Eigen::Index>(idx.rank(m))) = a;
        rho.noalias() += q * v * v.adjoint();
    }
    return DensityOperator(D, N, std::move(rho));
}

DensityOperator DensityOperator::normalized() const {
    const double t = trace();
    if (!(t > 0.0)) throw std::domain_error("cannot normalize a density operator with zero trace");
    return DensityOperator(D_, N_, rho_ / t);
}

void DensityOperator::validate(double tol, bool require_unit_trace) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::domain_error("density operator is not hermitian");
    if (rho_.rows() > 0) {
        const Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol)
            throw std::domain_error("density operator has a negative eigenvalue");
    }
    if (require_unit_trace && std::abs(trace() - 1.0) > tol)
        throw std::domain_error("density operator trace is not 1");
}

} // namespace mbent
