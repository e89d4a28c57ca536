// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON and CSV formats for states, spectra, matrices and transfer maps.
 *
 * State format:
 *
 *     {"D": 4, "N": 2, "amplitudes": [{"mask": 3, "re": 0.7071, "im": 0.0}, ...]}
 *
 * Amplitudes are written in increasing mask order. Parse errors are reported
 * as std::invalid_argument.
 */

#pragma once

#include <mbent/channels.hpp>
#include <mbent/fock.hpp>

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbent {

using Json = nlohmann::json;

[[nodiscard]] Json state_to_json(const PureState& psi);
[[nodiscard]] PureState state_from_json(const Json& j);

[[nodiscard]] std::string serialize_state(const PureState& psi);
[[nodiscard]] PureState parse_state(std::string_view text);

[[nodiscard]] PureState read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const PureState& psi);

/// Fixed 15-significant-digit rendering with '.' as decimal separator.
[[nodiscard]] std::string format_number(double x);

[[nodiscard]] Json spectrum_to_json(std::span<const double> values);
/// "index,eigenvalue" header plus one row per entry.
[[nodiscard]] std::string spectrum_to_csv(std::span<const double> values);

/// Dense [[[re, im], ...], ...]; refuses matrices of systems with D > 8.
[[nodiscard]] Json matrix_to_json(const Matrix& m, int D);

/// {"D", "D_A", "M", "kraus": [[[[re, im], ...], ...], ...]}
[[nodiscard]] Json transfer_map_to_json(const TransferMap& map);
[[nodiscard]] TransferMap transfer_map_from_json(const Json& j);
[[nodiscard]] TransferMap read_transfer_map_file(const std::filesystem::path& path);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

} // namespace mbent
