// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/mbody.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mbent {

namespace {

void check_order(int M, int N, const char* what) {
    if (M < 0 || M > N)
        throw std::invalid_argument(std::string(what) + ": M=" + std::to_string(M) + " outside [0, N=" +
                                    std::to_string(N) + "]");
}

void check_rows(int D, int M) {
    const auto rows = binom(D, M);
    if (rows > kMaxSubsetRows)
        throw std::length_error("binom(" + std::to_string(D) + ", " + std::to_string(M) + ") = " +
                                std::to_string(rows) + " rows exceeds the limit of " +
                                std::to_string(kMaxSubsetRows) + "; use the analytic oracles instead");
}

} // namespace

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

GammaMatrix::GammaMatrix(int D, int N, int M, SparseMatrix entries)
    : D_(D), N_(N), M_(M), g_(std::move(entries)) {}

Matrix GammaMatrix::dense() const {
    if (static_cast<std::uint64_t>(rows()) > kMaxDenseDim || static_cast<std::uint64_t>(cols()) > kMaxDenseDim)
        throw std::length_error("Gamma matrix too large to densify (" + std::to_string(rows()) + "x" +
                                std::to_string(cols()) + ")");
    return Matrix(g_);
}

GammaMatrix gamma_matrix(const PureState& psi, int M) {
    const int D = psi.modes();
    const int N = psi.particles();
    check_order(M, N, "gamma_matrix");
    check_rows(D, M);
    const SubsetIndexer rows(D, M);
    const SubsetIndexer cols(D, N - M);

    // Filled directly in compressed row form: setFromTriplets would allocate
    // one slot per column, and binom(D, N-M) can be astronomically large.
    struct Entry {
        std::int64_t row;
        std::int64_t col;
        Complex value;
    };
    std::vector<Entry> entries;
    entries.reserve(psi.size() * binom(N, M));
    for (const auto& [uni, amp] : psi.amplitudes()) {
        for_each_subset_of(uni, M, [&](Mask alpha) {
            const Mask beta = uni & ~alpha;
            entries.push_back({static_cast<std::int64_t>(rows.rank(alpha)), static_cast<std::int64_t>(cols.rank(beta)),
                               static_cast<double>(split_sign_unchecked(uni, alpha)) * amp});
        });
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

    SparseMatrix g(static_cast<std::int64_t>(rows.count()), static_cast<std::int64_t>(cols.count()));
    g.resizeNonZeros(static_cast<Eigen::Index>(entries.size()));
    std::int64_t* outer = g.outerIndexPtr();
    std::fill(outer, outer + g.outerSize() + 1, std::int64_t{0});
    for (std::size_t i = 0; i < entries.size(); ++i) {
        ++outer[entries[i].row + 1];
        g.innerIndexPtr()[i] = entries[i].col;
        g.valuePtr()[i] = entries[i].value;
    }
    for (Eigen::Index r = 0; r < g.outerSize(); ++r) outer[r + 1] += outer[r];
    return GammaMatrix(D, N, M, std::move(g));
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

MBodyDM MBodyDM::as_normalized() const {
    if (normalized) return *this;
    MBodyDM out = *this;
    out.matrix /= static_cast<double>(binom(N, M));
    out.normalized = true;
    return out;
}

MBodyDM rho_m(const PureState& psi, int M) {
    const GammaMatrix g = gamma_matrix(psi, M);
    const SparseMatrix& s = g.sparse();
    // Group Gamma by column; each column contributes an outer product.
    std::unordered_map<std::int64_t, std::vector<std::pair<Eigen::Index, Complex>>> cols;
    for (Eigen::Index r = 0; r < s.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(s, r); it; ++it) cols[it.col()].emplace_back(r, it.value());
    Matrix rho = Matrix::Zero(g.rows(), g.rows());
    for (const auto& [c, entries] : cols)
        for (const auto& [a, va] : entries)
            for (const auto& [b, vb] : entries) rho(a, b) += va * std::conj(vb);
    return MBodyDM{psi.modes(), psi.particles(), M, std::move(rho), false};
}

std::vector<double> mbody_spectrum(const PureState& psi, int M) { return rho_m(psi, M).eigenvalues(); }

MBodyDM rho_m_mixed(const DensityOperator& rho, int M) {
    const int D = rho.modes();
    const int N = rho.particles();
    check_order(M, N, "rho_m_mixed");
    check_rows(D, M);
    const SubsetIndexer sub(D, M);
    const auto dim = static_cast<Eigen::Index>(rho.dimension());
    const auto basis = rho.basis();
    const Matrix& r = rho.matrix();

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(sub.count()), static_cast<Eigen::Index>(sub.count()));
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Mask gj = basis[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Complex v = r(i, j);
            if (v == Complex{}) continue;
            const Mask gi = basis[static_cast<std::size_t>(i)];
            // Both sides must leave the same (N-M)-set beta behind.
            for_each_subset_of(gi & gj, N - M, [&](Mask beta) {
                const Mask a = gi & ~beta;
                const Mask ap = gj & ~beta;
                const int s = split_sign_unchecked(gi, a) * split_sign_unchecked(gj, ap);
                out(static_cast<Eigen::Index>(sub.rank(a)), static_cast<Eigen::Index>(sub.rank(ap))) +=
                    static_cast<double>(s) * v;
            });
        }
    }
    return MBodyDM{D, N, M, std::move(out), false};
}

// ---------------------------------------------------------------------------
// Schmidt decomposition
// ---------------------------------------------------------------------------

SchmidtDecomposition schmidt_decompose(const PureState& psi, int M, double rank_tol) {
    const int N = psi.particles();
    if (M < 1 || M > N - 1)
        throw std::invalid_argument("schmidt_decompose: M=" + std::to_string(M) + " outside [1, N-1]");
    const GammaMatrix g = gamma_matrix(psi, M);
    const Matrix dense = g.dense();
    const Eigen::BDCSVD<Matrix> svd(dense, Eigen::ComputeFullU | Eigen::ComputeFullV);

    SchmidtDecomposition s;
    s.D = psi.modes();
    s.N = N;
    s.M = M;
    s.U = svd.matrixU();
    s.V = svd.matrixV();
    const auto& sv = svd.singularValues();
    s.singular_values.assign(sv.data(), sv.data() + sv.size());
    s.spectrum.assign(static_cast<std::size_t>(dense.rows()), 0.0);
    for (std::size_t i = 0; i < s.singular_values.size(); ++i) {
        s.spectrum[i] = s.singular_values[i] * s.singular_values[i];
        if (s.singular_values[i] > rank_tol) ++s.rank;
    }
    return s;
}

PureState schmidt_reconstruct(const SchmidtDecomposition& s) {
    const Eigen::Index k = static_cast<Eigen::Index>(s.singular_values.size());
    Matrix diag = Matrix::Zero(s.U.cols(), s.V.cols());
    for (Eigen::Index i = 0; i < k; ++i) diag(i, i) = s.singular_values[static_cast<std::size_t>(i)];
    const Matrix g = s.U * diag * s.V.adjoint();

    // sum_{alpha,beta} Gamma C+_alpha C+_beta |0> counts each basis state binom(N, M) times.
    const double scale = 1.0 / static_cast<double>(binom(s.N, s.M));
    const SubsetIndexer rows(s.D, s.M);
    const SubsetIndexer cols(s.D, s.N - s.M);
    PureState out(s.D, s.N);
    for (Eigen::Index a = 0; a < g.rows(); ++a) {
        const Mask alpha = rows.unrank(static_cast<std::uint64_t>(a));
        for (Eigen::Index b = 0; b < g.cols(); ++b) {
            const Mask beta = cols.unrank(static_cast<std::uint64_t>(b));
            if ((alpha & beta) != 0 || std::abs(g(a, b)) < kPruneEps) continue;
            out.add(alpha | beta, scale * static_cast<double>(split_sign_unchecked(alpha | beta, alpha)) * g(a, b));
        }
    }
    out.prune();
    return out;
}

Matrix schmidt_cross_terms(const SchmidtDecomposition& s, const GammaMatrix& gamma) {
    return s.U.adjoint() * gamma.dense() * s.V;
}

PartnerSpectrumCheck partner_spectrum_check(const PureState& psi, int M, double tol) {
    const int N = psi.particles();
    check_order(M, N, "partner_spectrum_check");
    auto a = mbody_spectrum(psi, M);
    auto b = mbody_spectrum(psi, N - M);
    const std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);

    PartnerSpectrumCheck out;
    for (std::size_t i = 0; i < n; ++i) out.max_deviation = std::max(out.max_deviation, std::abs(a[i] - b[i]));
    out.agree = out.max_deviation <= tol;
    for (double x : a)
        if (x > tol) out.nonzero_m.push_back(x);
    for (double x : b)
        if (x > tol) out.nonzero_partner.push_back(x);
    return out;
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

DensityOperator mbody_density_operator(const MBodyDM& dm, bool normalize) {
    DensityOperator op(dm.D, dm.M, dm.matrix);
    return normalize ? op.normalized() : op;
}

DensityOperator contract(const DensityOperator& rho, int L) {
    const int D = rho.modes();
    const int N = rho.particles();
    if (L < 0 || L > N)
        throw std::invalid_argument("contract: L=" + std::to_string(L) + " outside [0, N=" + std::to_string(N) + "]");
    const SubsetIndexer out_idx(D, N - L);
    const auto dim_out = static_cast<Eigen::Index>(out_idx.count());
    const auto dim = static_cast<Eigen::Index>(rho.dimension());
    const auto basis = rho.basis();
    const Matrix& r = rho.matrix();

    Matrix out = Matrix::Zero(dim_out, dim_out);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Mask gj = basis[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Complex v = r(i, j);
            if (v == Complex{}) continue;
            const Mask gi = basis[static_cast<std::size_t>(i)];
            for_each_subset_of(gi & gj, L, [&](Mask beta) {
                const int s = split_sign_unchecked(gi, beta) * split_sign_unchecked(gj, beta);
                out(static_cast<Eigen::Index>(out_idx.rank(gi & ~beta)),
                    static_cast<Eigen::Index>(out_idx.rank(gj & ~beta))) += static_cast<double>(s) * v;
            });
        }
    }
    return DensityOperator(D, N - L, std::move(out));
}

double collective_average(const PureState& psi, const Vector& gamma, int M, double tol) {
    const auto rows = binom(psi.modes(), M);
    if (static_cast<std::uint64_t>(gamma.size()) != rows)
        throw std::invalid_argument("collective_average: coefficient vector has length " +
                                    std::to_string(gamma.size()) + ", expected binom(D, M) = " +
                                    std::to_string(rows));
    if (std::abs(gamma.norm() - 1.0) > tol)
        throw std::invalid_argument("collective_average: coefficient vector is not normalized");
    const MBodyDM dm = rho_m(psi, M);
    return (gamma.adjoint() * dm.matrix * gamma)(0, 0).real();
}

} // namespace mbent
