// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/channels.hpp>
#include <mbent/linalg.hpp>
#include <mbent/random.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mbent {

namespace {

void check_unitary(const Matrix& U, int D, double tol) {
    if (U.rows() != D || U.cols() != D)
        throw std::invalid_argument("one-body unitary must be " + std::to_string(D) + "x" + std::to_string(D));
    if (!is_unitary(U, tol)) throw std::invalid_argument("one-body matrix is not unitary");
}

void check_mixed_size(const DensityOperator& rho) {
    if (rho.modes() > kMaxMixedModes)
        throw std::length_error("mixed-state channels are limited to D <= " + std::to_string(kMaxMixedModes));
}

Vector dense_amplitudes(const PureState& psi, const SubsetIndexer& idx) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(idx.count()));
    for (const auto& [m, a] : psi.amplitudes()) v(static_cast<Eigen::Index>(idx.rank(m))) = a;
    return v;
}

PureState from_dense(int D, int N, const Vector& v, const SubsetIndexer& idx) {
    PureState out(D, N);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) >= kPruneEps) out.add(idx.unrank(static_cast<std::uint64_t>(i)), v(i));
    return out;
}

/// C_beta as a matrix from the N-sector to the (N - |beta|)-sector.
Matrix annihilator_matrix(int D, int N, Mask beta) {
    const int L = popcount(beta);
    const SubsetIndexer in(D, N);
    const SubsetIndexer out(D, N - L);
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(out.count()), static_cast<Eigen::Index>(in.count()));
    for (std::uint64_t i = 0; i < in.count(); ++i) {
        const Mask g = in.unrank(i);
        if ((g & beta) != beta) continue;
        k(static_cast<Eigen::Index>(out.rank(g & ~beta)), static_cast<Eigen::Index>(i)) =
            static_cast<double>(split_sign_unchecked(g, beta));
    }
    return k;
}

/// C_beta |psi>, unnormalized.
PureState annihilate_subset(const PureState& psi, Mask beta) {
    PureState out(psi.modes(), psi.particles() - popcount(beta));
    for (const auto& [g, a] : psi.amplitudes())
        if ((g & beta) == beta) out.add(g & ~beta, static_cast<double>(split_sign_unchecked(g, beta)) * a);
    return out;
}

OutcomeLabel subset_label(Mask beta) {
    OutcomeLabel l;
    if (popcount(beta) == 1) {
        l.kind = OutcomeLabel::Kind::Mode;
        l.mode = std::countr_zero(beta);
    } else {
        l.kind = OutcomeLabel::Kind::Subset;
    }
    l.subset = beta;
    return l;
}

OutcomeLabel occupancy_label(int mode, bool occupied) {
    OutcomeLabel l;
    l.kind = OutcomeLabel::Kind::Occupancy;
    l.mode = mode;
    l.occupied = occupied;
    return l;
}

void check_removal(int N, int L) {
    if (N == 0) throw std::invalid_argument("cannot remove fermions from the vacuum");
    if (L < 1 || L > N)
        throw std::invalid_argument("L=" + std::to_string(L) + " outside [1, N=" + std::to_string(N) + "]");
}

} // namespace

// ---------------------------------------------------------------------------
// Unitaries
// ---------------------------------------------------------------------------

PureState one_body_unitary(const PureState& psi, const Matrix& U, double tol) {
    const int D = psi.modes();
    const int N = psi.particles();
    check_unitary(U, D, tol);
    const SubsetIndexer idx(D, N);
    const Vector out = compound_matrix(U, N) * dense_amplitudes(psi, idx);
    return from_dense(D, N, out, idx);
}

DensityOperator one_body_unitary(const DensityOperator& rho, const Matrix& U, double tol) {
    check_unitary(U, rho.modes(), tol);
    const Matrix c = compound_matrix(U, rho.particles());
    return DensityOperator(rho.modes(), rho.particles(), c * rho.matrix() * c.adjoint());
}

MBodyDM transform_mbody(const MBodyDM& dm, const Matrix& U) {
    const Matrix c = compound_matrix(U, dm.M);
    MBodyDM out = dm;
    out.matrix = c * dm.matrix * c.adjoint();
    return out;
}

// ---------------------------------------------------------------------------
// Measurements
// ---------------------------------------------------------------------------

std::string OutcomeLabel::to_string() const {
    switch (kind) {
    case Kind::Mode: return "mode " + std::to_string(mode);
    case Kind::Subset: {
        std::string s = "subset {";
        bool first = true;
        for (int i : modes_of(subset)) {
            s += (first ? "" : ",") + std::to_string(i);
            first = false;
        }
        return s + "}";
    }
    case Kind::Occupancy: return "mode " + std::to_string(mode) + (occupied ? " occupied" : " empty");
    case Kind::MapIndex: return "branch " + std::to_string(index);
    }
    return {};
}

std::vector<PureOutcome> measure_l_body(const PureState& psi, int L) {
    const int N = psi.particles();
    check_removal(N, L);
    const double norm2 = psi.norm_squared();
    if (!(norm2 > 0.0)) throw std::domain_error("cannot measure the zero state");
    const double scale = 1.0 / (static_cast<double>(binom(N, L)) * norm2);
    std::vector<PureOutcome> out;
    for (Mask beta : SubsetIndexer(psi.modes(), L).masks()) {
        PureState post = annihilate_subset(psi, beta);
        const double p = post.norm_squared() * scale;
        if (p < kMinOutcomeProbability) continue;
        out.push_back({subset_label(beta), p, post.normalized()});
    }
    return out;
}

std::vector<PureOutcome> measure_single_fermion(const PureState& psi) { return measure_l_body(psi, 1); }

std::vector<MixedOutcome> measure_l_body(const DensityOperator& rho, int L) {
    check_mixed_size(rho);
    const int D = rho.modes();
    const int N = rho.particles();
    check_removal(N, L);
    const double tr = rho.trace();
    if (!(tr > 0.0)) throw std::domain_error("cannot measure a zero-trace operator");
    std::vector<MixedOutcome> out;
    for (Mask beta : SubsetIndexer(D, L).masks()) {
        const Matrix k = annihilator_matrix(D, N, beta);
        const Matrix post = k * rho.matrix() * k.adjoint();
        const double w = post.trace().real();
        const double p = w / (static_cast<double>(binom(N, L)) * tr);
        if (p < kMinOutcomeProbability) continue;
        out.push_back({subset_label(beta), p, DensityOperator(D, N - L, post / w)});
    }
    return out;
}

std::vector<MixedOutcome> measure_single_fermion(const DensityOperator& rho) { return measure_l_body(rho, 1); }

std::vector<PureOutcome> measure_occupancy(const PureState& psi, int mode) {
    const int D = psi.modes();
    if (mode < 0 || mode >= D)
        throw std::out_of_range("mode " + std::to_string(mode) + " outside [0, " + std::to_string(D) + ")");
    const double norm2 = psi.norm_squared();
    if (!(norm2 > 0.0)) throw std::domain_error("cannot measure the zero state");
    PureState occ(D, psi.particles());
    PureState emp(D, psi.particles());
    for (const auto& [m, a] : psi.amplitudes()) (test_bit(m, mode) ? occ : emp).add(m, a);
    std::vector<PureOutcome> out;
    for (auto* branch : {&occ, &emp}) {
        const double p = branch->norm_squared() / norm2;
        if (p < kMinOutcomeProbability) continue;
        out.push_back({occupancy_label(mode, branch == &occ), p, branch->normalized()});
    }
    return out;
}

std::vector<MixedOutcome> measure_occupancy(const DensityOperator& rho, int mode) {
    check_mixed_size(rho);
    const int D = rho.modes();
    if (mode < 0 || mode >= D)
        throw std::out_of_range("mode " + std::to_string(mode) + " outside [0, " + std::to_string(D) + ")");
    const double tr = rho.trace();
    if (!(tr > 0.0)) throw std::domain_error("cannot measure a zero-trace operator");
    const auto basis = rho.basis();
    const auto dim = static_cast<Eigen::Index>(basis.size());
    std::vector<MixedOutcome> out;
    for (bool occupied : {true, false}) {
        Eigen::VectorXd proj(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            proj(i) = test_bit(basis[static_cast<std::size_t>(i)], mode) == occupied ? 1.0 : 0.0;
        const Matrix post = proj.asDiagonal() * rho.matrix() * proj.asDiagonal();
        const double w = post.trace().real();
        const double p = w / tr;
        if (p < kMinOutcomeProbability) continue;
        out.push_back({occupancy_label(mode, occupied), p, DensityOperator(D, rho.particles(), post / w)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

Matrix normalized_mbody(const PureState& s, int M) {
    return rho_m(s, M).matrix / (static_cast<double>(binom(s.particles(), M)) * s.norm_squared());
}

Matrix normalized_mbody(const DensityOperator& s, int M) {
    return rho_m_mixed(s, M).matrix / (static_cast<double>(binom(s.particles(), M)) * s.trace());
}

std::vector<EntropyCheck> entropy_checks(const Spectrum& initial, std::span<const std::pair<double, Spectrum>> branches,
                                         double tol) {
    std::vector<EntropyCheck> out;
    for (const auto& f : builtin_entropies()) {
        EntropyCheck c;
        c.functional = f.name;
        c.initial = entropy(initial, f);
        for (const auto& [p, s] : branches) c.average += p * entropy(s, f);
        c.holds = c.initial >= c.average - tol;
        out.push_back(std::move(c));
    }
    return out;
}

template <class State>
MeasurementReport verify_impl(const State& initial, std::span<const MeasurementOutcome<State>> outcomes,
                              std::span<const int> Ms, double tol) {
    MeasurementReport rep;
    rep.outcomes = outcomes.size();
    for (const auto& o : outcomes) rep.total_probability += o.probability;
    if (outcomes.empty()) return rep;
    const int post_n = outcomes.front().post_state.particles();
    rep.channel = post_n == initial.particles() ? "occupancy" : "removal";

    for (int M : Ms) {
        if (M < 1 || M > post_n)
            throw std::invalid_argument("verification order M=" + std::to_string(M) + " outside [1, " +
                                        std::to_string(post_n) + "]");
        LevelReport lvl;
        lvl.M = M;
        const Matrix rho_n = normalized_mbody(initial, M);
        Matrix mix = Matrix::Zero(rho_n.rows(), rho_n.cols());
        std::vector<std::pair<double, Spectrum>> branches;
        for (const auto& o : outcomes) {
            const Matrix r = normalized_mbody(o.post_state, M);
            mix += o.probability * r;
            branches.emplace_back(o.probability, Spectrum(hermitian_eigenvalues(r)));
        }
        lvl.mixture_deviation = (mix - rho_n).cwiseAbs().maxCoeff();
        lvl.initial = Spectrum(hermitian_eigenvalues(rho_n));
        lvl.average = weighted_sum(branches);
        lvl.verdict = majorize_compare(lvl.initial, lvl.average, std::max(tol, 1e-9));
        lvl.majorized = majorized_by(lvl.initial, lvl.average, tol);
        lvl.entropies = entropy_checks(lvl.initial, branches, 1e-10);
        rep.levels.push_back(std::move(lvl));
    }
    return rep;
}

} // namespace

bool MeasurementReport::all_hold(double probability_tol, double mixture_tol) const {
    if (std::abs(total_probability - 1.0) > probability_tol) return false;
    for (const auto& l : levels) {
        if (l.mixture_deviation > mixture_tol || !l.majorized) return false;
        for (const auto& e : l.entropies)
            if (!e.holds) return false;
    }
    return true;
}

MeasurementReport verify_measurement(const PureState& psi, std::span<const PureOutcome> outcomes,
                                     std::span<const int> Ms, double tol) {
    return verify_impl(psi, outcomes, Ms, tol);
}

MeasurementReport verify_measurement(const DensityOperator& rho, std::span<const MixedOutcome> outcomes,
                                     std::span<const int> Ms, double tol) {
    return verify_impl(rho, outcomes, Ms, tol);
}

// ---------------------------------------------------------------------------
// Transfer maps
// ---------------------------------------------------------------------------

double TransferMap::completeness_deviation() const {
    if (kraus.empty()) return 1.0;
    const auto n = kraus.front().cols();
    Matrix acc = Matrix::Zero(n, n);
    for (const auto& t : kraus) acc += t.adjoint() * t;
    return (acc - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

void TransferMap::validate(double tol) const {
    if (D < 1 || D_A < 1 || D + D_A > kMaxModes)
        throw std::invalid_argument("transfer map needs D, D_A >= 1 and D + D_A <= 63");
    if (M < 1 || M > D_A || M > D)
        throw std::invalid_argument("transfer map order M=" + std::to_string(M) + " needs 1 <= M <= min(D, D_A)");
    if (kraus.empty()) throw std::invalid_argument("transfer map has no Kraus operators");
    const auto rows = static_cast<Eigen::Index>(binom(D_A, M));
    const auto cols = static_cast<Eigen::Index>(binom(D, M));
    for (const auto& t : kraus)
        if (t.rows() != rows || t.cols() != cols)
            throw std::invalid_argument("Kraus block is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                                        ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    const double dev = completeness_deviation();
    if (dev > tol)
        throw std::domain_error("transfer map violates completeness (deviation " + std::to_string(dev) + ")");
}

TransferMap uniform_transfer_map(int D, int D_A, int M) {
    if (D_A < D) throw std::invalid_argument("uniform transfer map needs D_A >= D");
    TransferMap map{D, D_A, M, {}};
    const SubsetIndexer sys(D, M);
    const SubsetIndexer reg(D_A, M);
    Matrix t = Matrix::Zero(static_cast<Eigen::Index>(reg.count()), static_cast<Eigen::Index>(sys.count()));
    for (std::uint64_t i = 0; i < sys.count(); ++i)
        t(static_cast<Eigen::Index>(reg.rank(sys.unrank(i))), static_cast<Eigen::Index>(i)) = 1.0;
    map.kraus.push_back(std::move(t));
    map.validate();
    return map;
}

TransferMap mode_tagged_transfer_map(int D, int D_A, int M) {
    TransferMap map{D, D_A, M, {}};
    const auto rows = static_cast<Eigen::Index>(binom(D_A, M));
    const auto cols = static_cast<Eigen::Index>(binom(D, M));
    for (Eigen::Index a = 0; a < cols; ++a) {
        Matrix t = Matrix::Zero(rows, cols);
        t(0, a) = 1.0;
        map.kraus.push_back(std::move(t));
    }
    map.validate();
    return map;
}

TransferMap random_transfer_map(int D, int D_A, int M, int outcomes, std::uint64_t seed) {
    if (outcomes < 1) throw std::invalid_argument("random transfer map needs at least one outcome");
    const auto rows = static_cast<Eigen::Index>(binom(D_A, M));
    const auto cols = static_cast<Eigen::Index>(binom(D, M));
    if (rows * outcomes < cols)
        throw std::invalid_argument("outcomes * binom(D_A, M) must be at least binom(D, M)");
    Rng rng(seed);
    const Matrix iso = random_isometry(rows * outcomes, cols, rng);
    TransferMap map{D, D_A, M, {}};
    for (int r = 0; r < outcomes; ++r) map.kraus.push_back(iso.middleRows(r * rows, rows));
    map.validate();
    return map;
}

void BipartiteState::validate() const {
    const Mask reg = low_bits(D + D_A) & ~low_bits(D);
    for (const auto& [m, a] : joint.amplitudes())
        if (popcount(m & reg) != M)
            throw std::domain_error("bipartite amplitude with " + std::to_string(popcount(m & reg)) +
                                    " register fermions, expected " + std::to_string(M));
}

Matrix BipartiteState::coefficients() const {
    const int N = joint.particles();
    const SubsetIndexer reg(D_A, M);
    const SubsetIndexer sys(D, N - M);
    if (sys.count() > kMaxDenseDim) throw std::length_error("system sector too large for dense coefficients");
    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(reg.count()), static_cast<Eigen::Index>(sys.count()));
    const Mask sys_bits = low_bits(D);
    for (const auto& [m, a] : joint.amplitudes()) {
        const Mask mu = m & ~sys_bits;
        g(static_cast<Eigen::Index>(reg.rank(mu >> D)), static_cast<Eigen::Index>(sys.rank(m & sys_bits))) =
            static_cast<double>(split_sign_unchecked(m, mu)) * a;
    }
    return g;
}

std::vector<MapOutcome> apply_transfer_map(const PureState& psi, const TransferMap& map) {
    map.validate();
    const int N = psi.particles();
    if (psi.modes() != map.D)
        throw std::invalid_argument("state has " + std::to_string(psi.modes()) + " modes, map expects " +
                                    std::to_string(map.D));
    if (map.M > N) throw std::invalid_argument("transfer map moves more fermions than the state holds");
    const GammaMatrix gamma = gamma_matrix(psi, map.M);
    const double scale = 1.0 / std::sqrt(static_cast<double>(binom(N, map.M)) * psi.norm_squared());
    const SubsetIndexer reg(map.D_A, map.M);
    const SubsetIndexer sys(map.D, N - map.M);
    // C+_mu C+_beta|0> with register modes above system modes: reorder sign.
    const double order_sign = ((map.M * (N - map.M)) & 1) ? -1.0 : 1.0;

    std::vector<MapOutcome> out;
    for (std::size_t r = 0; r < map.kraus.size(); ++r) {
        const Matrix g = scale * (map.kraus[r] * gamma.sparse());
        const double p = g.squaredNorm();
        if (p < kMinOutcomeProbability) continue;
        BipartiteState s{map.D, map.D_A, map.M, PureState(map.D + map.D_A, N)};
        const double inv = 1.0 / std::sqrt(p);
        for (Eigen::Index mu = 0; mu < g.rows(); ++mu) {
            const Mask mu_mask = reg.unrank(static_cast<std::uint64_t>(mu)) << map.D;
            for (Eigen::Index b = 0; b < g.cols(); ++b) {
                if (std::abs(g(mu, b)) < kPruneEps) continue;
                s.joint.add(mu_mask | sys.unrank(static_cast<std::uint64_t>(b)), order_sign * inv * g(mu, b));
            }
        }
        OutcomeLabel label;
        label.kind = OutcomeLabel::Kind::MapIndex;
        label.index = static_cast<int>(r);
        out.push_back({label, p, std::move(s)});
    }
    return out;
}

MBodyDM reduced_state_A(const BipartiteState& s) {
    const Matrix g = s.coefficients();
    const double p = g.squaredNorm();
    if (!(p > 0.0)) throw std::domain_error("zero-probability branch");
    return MBodyDM{s.D_A, s.M, s.M, g * g.adjoint() / p, true};
}

MBodyDM reduced_state_B(const BipartiteState& s) {
    const Matrix g = s.coefficients();
    const double p = g.squaredNorm();
    if (!(p > 0.0)) throw std::domain_error("zero-probability branch");
    const int nb = s.joint.particles() - s.M;
    return MBodyDM{s.D, nb, nb, g.transpose() * g.conjugate() / p, true};
}

TransferReport verify_transfer_majorization(const PureState& psi, const TransferMap& map, double tol) {
    const auto outcomes = apply_transfer_map(psi, map);
    TransferReport rep;
    rep.outcomes = outcomes.size();
    std::vector<std::pair<double, Spectrum>> branches;
    for (const auto& o : outcomes) {
        rep.total_probability += o.probability;
        branches.emplace_back(o.probability, Spectrum(reduced_state_A(o.post_state).eigenvalues()));
    }
    const int N = psi.particles();
    rep.initial = Spectrum(mbody_spectrum(psi, map.M))
                      .scaled(1.0 / (static_cast<double>(binom(N, map.M)) * psi.norm_squared()));
    rep.average = weighted_sum(branches);
    const std::size_t n = std::max(rep.initial.size(), rep.average.size());
    rep.initial = rep.initial.padded(n);
    rep.average = rep.average.padded(n);
    rep.verdict = majorize_compare(rep.initial, rep.average, tol);
    rep.majorized = majorized_by(rep.initial, rep.average, tol);
    rep.saturated = rep.verdict.verdict == Verdict::Equivalent;
    rep.entropies = entropy_checks(rep.initial, branches, 1e-10);
    return rep;
}

} // namespace mbent
