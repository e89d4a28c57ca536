// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mbent/fock.hpp>

#include <vector>

namespace mbent {

/// Eigenvalues of a hermitian matrix, sorted nonincreasing.
[[nodiscard]] std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// Eigenpairs sorted by nonincreasing eigenvalue; column j of `vectors` pairs with values[j].
struct HermitianEigen {
    std::vector<double> values;
    Matrix vectors;
};
[[nodiscard]] HermitianEigen hermitian_eigen(const Matrix& h);

[[nodiscard]] bool is_unitary(const Matrix& u, double tol = 1e-10);
[[nodiscard]] bool is_hermitian(const Matrix& h, double tol = 1e-10);

/**
 * M-th compound matrix: entry (alpha, alpha') is det U[alpha, alpha'] over
 * M-subsets in canonical order. It is the matrix of a one-body transformation
 * restricted to the M-fermion sector.
 */
[[nodiscard]] Matrix compound_matrix(const Matrix& u, int M);

} // namespace mbent
