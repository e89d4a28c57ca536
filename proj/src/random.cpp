// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/random.hpp>

#include <cmath>
#include <stdexcept>

namespace mbent {

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex{re, im};
        }
    return m;
}

Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    if (rows < cols) throw std::invalid_argument("random_isometry: rows < cols");
    const Matrix g = random_gaussian(rows, cols, rng);
    const Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) { return random_isometry(n, n, rng); }

} // namespace mbent
