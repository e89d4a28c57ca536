// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mbent/fock.hpp>

#include <cstdint>
#include <random>

namespace mbent {

using Rng = std::mt19937_64;

/// Matrix of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
[[nodiscard]] Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-random unitary via QR with phase correction.
[[nodiscard]] Matrix random_unitary(Eigen::Index n, Rng& rng);

/// rows x cols matrix with orthonormal columns (rows >= cols).
[[nodiscard]] Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

} // namespace mbent
