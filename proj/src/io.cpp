// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/io.hpp>

#include <fstream>
#include <iomanip>
#include <locale>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mbent {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

double number(const Json& v, const char* what) {
    if (!v.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
    return v.get<double>();
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& v) {
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument("complex entries must be [re, im] pairs");
    return {number(v[0], "real part"), number(v[1], "imaginary part")};
}

Json dense_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix dense_from_json(const Json& rows) {
    if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
    const auto nr = static_cast<Eigen::Index>(rows.size());
    const auto nc = static_cast<Eigen::Index>(rows[0].is_array() ? rows[0].size() : 0);
    Matrix m(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r) {
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != nc)
            throw std::invalid_argument("matrix rows have unequal lengths");
        for (Eigen::Index c = 0; c < nc; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

} // namespace

Json state_to_json(const PureState& psi) {
    Json amps = Json::array();
    for (const auto& [m, a] : psi.amplitudes())
        amps.push_back(Json{{"mask", m}, {"re", a.real()}, {"im", a.imag()}});
    return Json{{"D", psi.modes()}, {"N", psi.particles()}, {"amplitudes", std::move(amps)}};
}

PureState state_from_json(const Json& j) {
    PureState psi(int_field(j, "D"), int_field(j, "N"));
    const Json& amps = field(j, "amplitudes");
    if (!amps.is_array()) throw std::invalid_argument("'amplitudes' must be an array");
    std::set<Mask> seen;
    for (const Json& a : amps) {
        const Json& mask = field(a, "mask");
        if (!mask.is_number_unsigned() && !(mask.is_number_integer() && mask.get<std::int64_t>() >= 0))
            throw std::invalid_argument("'mask' must be a nonnegative integer");
        const Mask m = mask.get<Mask>();
        if (!seen.insert(m).second) throw std::invalid_argument("duplicate mask " + std::to_string(m));
        const double im = a.contains("im") ? number(a.at("im"), "'im'") : 0.0;
        psi.add(m, {number(field(a, "re"), "'re'"), im});
    }
    return psi;
}

std::string serialize_state(const PureState& psi) { return state_to_json(psi).dump(2); }

PureState parse_state(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return state_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PureState read_state_file(const std::filesystem::path& path) { return parse_state(read_text_file(path)); }

void write_state_file(const std::filesystem::path& path, const PureState& psi) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path.string() + "'");
    out << serialize_state(psi) << '\n';
}

std::string format_number(double x) {
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(15) << x;
    return ss.str();
}

Json spectrum_to_json(std::span<const double> values) { return Json(std::vector<double>(values.begin(), values.end())); }

std::string spectrum_to_csv(std::span<const double> values) {
    std::string out = "index,eigenvalue\n";
    for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i) + "," + format_number(values[i]) + "\n";
    return out;
}

Json matrix_to_json(const Matrix& m, int D) {
    if (D > 8) throw std::invalid_argument("dense matrix dumps are limited to D <= 8");
    return dense_json(m);
}

Json transfer_map_to_json(const TransferMap& map) {
    Json kraus = Json::array();
    for (const auto& t : map.kraus) kraus.push_back(dense_json(t));
    return Json{{"D", map.D}, {"D_A", map.D_A}, {"M", map.M}, {"kraus", std::move(kraus)}};
}

TransferMap transfer_map_from_json(const Json& j) {
    TransferMap map{int_field(j, "D"), int_field(j, "D_A"), int_field(j, "M"), {}};
    const Json& kraus = field(j, "kraus");
    if (!kraus.is_array()) throw std::invalid_argument("'kraus' must be an array of matrices");
    for (const Json& t : kraus) map.kraus.push_back(dense_from_json(t));
    try {
        map.validate();
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(e.what());
    }
    return map;
}

TransferMap read_transfer_map_file(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return transfer_map_from_json(j);
}

} // namespace mbent
