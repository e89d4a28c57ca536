// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/linalg.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mbent {

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
    if (h.rows() == 0) return {};
    const Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver did not converge");
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

HermitianEigen hermitian_eigen(const Matrix& h) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver did not converge");
    const auto n = es.eigenvalues().size();
    // Eigen returns ascending order; reverse it.
    HermitianEigen out{std::vector<double>(static_cast<std::size_t>(n)), Matrix(h.rows(), n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        out.values[static_cast<std::size_t>(j)] = es.eigenvalues()(n - 1 - j);
        out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    return out;
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) return false;
    return h.rows() == 0 || (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix compound_matrix(const Matrix& u, int M) {
    if (u.rows() != u.cols()) throw std::invalid_argument("compound_matrix: matrix is not square");
    const int D = static_cast<int>(u.rows());
    const SubsetIndexer idx(D, M);
    if (idx.count() > kMaxDenseDim) throw std::length_error("compound matrix too large");
    const auto subsets = idx.masks();
    std::vector<std::vector<int>> modes;
    modes.reserve(subsets.size());
    for (Mask s : subsets) modes.push_back(modes_of(s));

    const auto n = static_cast<Eigen::Index>(subsets.size());
    Matrix out(n, n);
    Matrix sub(M, M);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < M; ++j) sub(i, j) = u(modes[r][i], modes[c][j]);
            out(r, c) = M == 0 ? Complex{1.0} : sub.determinant();
        }
    }
    return out;
}

} // namespace mbent
