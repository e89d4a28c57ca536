// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mbody.hpp
 * @brief (M, N-M) coefficient matrices, M-body density matrices and their
 *        Schmidt decomposition.
 *
 * For an N-fermion state |psi>, Gamma^(M) has rows indexed by M-subsets alpha
 * and columns by (N-M)-subsets beta (both in canonical lexicographic order):
 *
 *     Gamma^(M)(alpha, beta) = <0| C_beta C_alpha |psi>
 *
 * and the M-body density matrix is rho^(M) = Gamma^(M) Gamma^(M)+, with
 * rho^(M)(alpha, alpha') = <psi| C+_alpha' C_alpha |psi> and trace binom(N, M).
 */

#pragma once

#include <mbent/fock.hpp>
#include <mbent/linalg.hpp>

#include <Eigen/SparseCore>

#include <cstdint>
#include <vector>

namespace mbent {

/// Row-count limit for dense M-body matrices.
inline constexpr std::uint64_t kMaxSubsetRows = 50000;

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, std::int64_t>;

class GammaMatrix {
public:
    GammaMatrix(int D, int N, int M, SparseMatrix entries);

    [[nodiscard]] int modes() const noexcept { return D_; }
    [[nodiscard]] int particles() const noexcept { return N_; }
    [[nodiscard]] int order() const noexcept { return M_; }
    [[nodiscard]] Eigen::Index rows() const noexcept { return g_.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return g_.cols(); }
    [[nodiscard]] const SparseMatrix& sparse() const noexcept { return g_; }
    /// Dense copy; throws std::length_error above kMaxDenseDim in either dimension.
    [[nodiscard]] Matrix dense() const;
    [[nodiscard]] double frobenius_norm_squared() const { return g_.squaredNorm(); }

private:
    int D_;
    int N_;
    int M_;
    SparseMatrix g_;
};

[[nodiscard]] GammaMatrix gamma_matrix(const PureState& psi, int M);

struct MBodyDM {
    int D = 0;
    int N = 0;
    int M = 0;
    Matrix matrix;
    bool normalized = false;

    [[nodiscard]] double trace() const { return matrix.trace().real(); }
    /// Copy divided by binom(N, M) (unit trace).
    [[nodiscard]] MBodyDM as_normalized() const;
    /// Eigenvalues, nonincreasing.
    [[nodiscard]] std::vector<double> eigenvalues() const { return hermitian_eigenvalues(matrix); }
};

[[nodiscard]] MBodyDM rho_m(const PureState& psi, int M);

/// rho^(M)(alpha, alpha') = Tr[rho C+_alpha' C_alpha] for a density operator.
[[nodiscard]] MBodyDM rho_m_mixed(const DensityOperator& rho, int M);

/// Nonincreasing spectrum of rho^(M) for a pure state.
[[nodiscard]] std::vector<double> mbody_spectrum(const PureState& psi, int M);

/**
 * Gamma^(M) = U diag(sqrt(lambda)) V+.
 *
 * Column nu of U holds the coefficients of the natural M-fermion creator
 * A+_nu = sum_alpha U(alpha, nu) C+_alpha; column nu of V gives
 * B+_nu = sum_beta conj(V(beta, nu)) C+_beta. Under degeneracy U and V are
 * not canonical; only the spectrum and the relations they satisfy are.
 */
struct SchmidtDecomposition {
    int D = 0;
    int N = 0;
    int M = 0;
    std::vector<double> spectrum;         ///< lambda_nu, nonincreasing, length binom(D, M)
    std::vector<double> singular_values;  ///< sqrt(lambda_nu) for nu < min(rows, cols)
    Matrix U;
    Matrix V;
    int rank = 0;
};

/// Requires 1 <= M <= N-1.
[[nodiscard]] SchmidtDecomposition schmidt_decompose(const PureState& psi, int M,
                                                     double rank_tol = 1e-12);

/// binom(N,M)^-1 sum_nu sqrt(lambda_nu) A+_nu B+_nu |0>, rebuilt on the Fock basis.
[[nodiscard]] PureState schmidt_reconstruct(const SchmidtDecomposition& s);

/// Matrix of <0| B_nu' A_nu |psi> = (U+ Gamma V)(nu, nu').
[[nodiscard]] Matrix schmidt_cross_terms(const SchmidtDecomposition& s, const GammaMatrix& gamma);

struct PartnerSpectrumCheck {
    bool agree = false;
    double max_deviation = 0.0;
    std::vector<double> nonzero_m;
    std::vector<double> nonzero_partner;
};

/// Compares the nonzero eigenvalues of rho^(M) and rho^(N-M).
[[nodiscard]] PartnerSpectrumCheck partner_spectrum_check(const PureState& psi, int M,
                                                          double tol = 1e-10);

/// Density operator sum rho(alpha, alpha') C+_alpha|0><0|C_alpha' on the M-fermion sector.
[[nodiscard]] DensityOperator mbody_density_operator(const MBodyDM& dm, bool normalize = false);

/// sum_beta C_beta rho C+_beta over L-subsets beta; result lives in the (N-L)-sector.
[[nodiscard]] DensityOperator contract(const DensityOperator& rho, int L);

/// <psi| A+ A |psi> for A+ = sum_alpha gamma(alpha) C+_alpha; gamma must have unit norm.
[[nodiscard]] double collective_average(const PureState& psi, const Vector& gamma, int M,
                                        double tol = 1e-10);

} // namespace mbent
