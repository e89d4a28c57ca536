// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/cli.hpp>
#include <mbent/io.hpp>
#include <mbent/states.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace mbent;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "mbent");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path tmp_dir() {
    const char* env = std::getenv("MBENT_TEST_TMP");
    return env != nullptr ? std::filesystem::path(env) : std::filesystem::temp_directory_path();
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

} // namespace

TEST_CASE("state JSON round trip") {
    const PureState psi = make_random(6, 3, 7);
    const PureState back = parse_state(serialize_state(psi));
    CHECK(back.modes() == 6);
    CHECK(back.particles() == 3);
    CHECK(max_abs_difference(psi, back) == 0.0);

    const auto path = tmp_dir() / "roundtrip_state.json";
    write_state_file(path, psi);
    CHECK(max_abs_difference(read_state_file(path), psi) == 0.0);

    const Json j = state_to_json(make_pair_condensate(4, 1));
    CHECK(j["amplitudes"].size() == 2);
    CHECK(j["amplitudes"][0]["mask"] == 3);
}

TEST_CASE("state JSON errors") {
    CHECK_THROWS_AS((void)parse_state("{"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_state(R"({"D": 4, "amplitudes": []})"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_state(R"({"D": 4, "N": 2, "amplitudes": [{"mask": 7, "re": 1}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)parse_state(R"({"D": 4, "N": 2, "amplitudes": [{"mask": 3, "re": 1}, {"mask": 3, "re": 1}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)parse_state(R"({"D": 4, "N": 2, "amplitudes": [{"mask": 3, "re": "x"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)read_state_file(tmp_dir() / "does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("number and spectrum formatting") {
    CHECK(format_number(0.2) == "0.2");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(64.0 / 15.0) == "4.26666666666667");
    const std::vector<double> s{2.0, 0.2};
    CHECK(spectrum_to_csv(s) == "index,eigenvalue\n0,2\n1,0.2\n");
    CHECK(spectrum_to_json(s).size() == 2);
    CHECK_THROWS_AS((void)matrix_to_json(Matrix::Identity(2, 2), 9), std::invalid_argument);
}

TEST_CASE("transfer map JSON") {
    const TransferMap map = random_transfer_map(4, 3, 1, 2, 3);
    const TransferMap back = transfer_map_from_json(transfer_map_to_json(map));
    CHECK(back.D == 4);
    CHECK(back.kraus.size() == 2);
    CHECK((back.kraus[1] - map.kraus[1]).cwiseAbs().maxCoeff() == 0.0);

    Json bad = transfer_map_to_json(uniform_transfer_map(4, 4, 1));
    bad["kraus"][0][0][0][0] = 0.5;
    CHECK_THROWS_AS((void)transfer_map_from_json(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)transfer_map_from_json(Json{{"D", 4}}), std::invalid_argument);
}

TEST_CASE("cli spectrum") {
    const auto r = run({"spectrum", "--family", "pair-condensate", "--D", "12", "--k", "3", "--M", "2"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["ok"] == true);
    const auto& level = j["levels"][0];
    CHECK(std::abs(level["spectrum"][0].get<double>() - 2.0) < 1e-10);
    CHECK(std::abs(level["trace"].get<double>() - 15.0) < 1e-10);
    CHECK(level["partner_M"] == 4);

    const auto csv = run({"spectrum", "--family", "ghz", "--D", "8", "--M", "1", "--format", "csv"});
    REQUIRE(csv.code == kExitOk);
    CHECK(csv.out.rfind("index,eigenvalue\n0,0.5\n", 0) == 0);

    const auto multi = run({"spectrum", "--family", "ghz", "--D", "4", "--format", "csv"});
    CHECK(multi.out.rfind("M,index,eigenvalue\n0,0,1\n", 0) == 0);
}

TEST_CASE("cli reads a state file") {
    const auto path = tmp_dir() / "cli_state.json";
    write_text(path, R"({"D": 4, "N": 2, "amplitudes": [{"mask": 3, "re": 0.8944271909999159, "im": 0.0},
                                                   {"mask": 12, "re": 0.4472135954999579, "im": 0.0}]})");
    const auto r = run({"spectrum", "--state", path.string(), "--M", "1", "--entropy", "all"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    const auto spec = j["levels"][0]["spectrum"].get<std::vector<double>>();
    const std::vector<double> expected{0.8, 0.8, 0.2, 0.2};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(spec[i] - expected[i]) < 1e-12);
    CHECK(j["levels"][0]["entropy"].size() == 3);

    const auto made = run({"make-state", "--family", "slater", "--D", "5", "--modes", "0,3"});
    REQUIRE(made.code == kExitOk);
    CHECK(parse_state(made.out).amplitude(0b01001) == Complex{1.0});
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == kExitInput);
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({"spectrum"}).code == kExitInput);
    CHECK(run({"spectrum", "--family", "bcs", "--D", "4"}).code == kExitInput);
    CHECK(run({"spectrum", "--family", "ghz", "--D", "7"}).code == kExitInput);
    CHECK(run({"spectrum", "--state", (tmp_dir() / "missing.json").string()}).code == kExitInput);
    CHECK(run({"figure1", "--D", "30", "--M", "5"}).code == kExitInput);
    CHECK(run({"spectrum", "--family", "random", "--D", "8", "--N", "4", "--tol", "1e-300"}).code == kExitAssertion);
}

TEST_CASE("cli tolerance from the environment") {
    ::setenv("MBENT_TOL", "1e-300", 1);
    const int strict = run({"spectrum", "--family", "random", "--D", "8", "--N", "4"}).code;
    ::setenv("MBENT_TOL", "not-a-number", 1);
    const int bad = run({"spectrum", "--family", "ghz", "--D", "4"}).code;
    ::unsetenv("MBENT_TOL");
    CHECK(strict == kExitAssertion);
    CHECK(bad == kExitInput);
    CHECK(run({"spectrum", "--family", "random", "--D", "8", "--N", "4"}).code == kExitOk);
}

TEST_CASE("cli measurement and maps") {
    const auto single = run({"measure", "--family", "random", "--D", "8", "--N", "4", "--channel", "single",
                             "--M", "1,2,3", "--trials", "3"});
    REQUIRE(single.code == kExitOk);
    CHECK(Json::parse(single.out)["passes"] == 3);

    const auto occ = run({"measure", "--family", "pair-condensate", "--D", "12", "--k", "3", "--channel",
                          "occupancy", "--M", "1,2"});
    REQUIRE(occ.code == kExitOk);
    const Json oj = Json::parse(occ.out);
    const auto& lvl2 = oj["results"][0]["levels"][1];
    CHECK(lvl2["majorized"] == false);
    CHECK(std::abs(lvl2["top_average"].get<double>() - 1.7 / 15.0) < 1e-10);

    const auto map = run({"map-bipartite", "--family", "two-fermion", "--D", "4", "--pair", "0,1,0.894427190999916",
                          "--pair", "2,3,0.447213595499958", "--map", "uniform", "--M", "1"});
    REQUIRE(map.code == kExitOk);
    CHECK(Json::parse(map.out)["results"][0]["saturated"] == true);

    const auto rnd = run({"map", "--family", "random", "--D", "6", "--N", "3", "--map", "random", "--M", "1",
                          "--trials", "4"});
    REQUIRE(rnd.code == kExitOk);
    CHECK(Json::parse(rnd.out)["passes"] == 4);
}

TEST_CASE("cli majorize and figure") {
    const auto r = run({"majorize", "--a", "ghz:D=8", "--b", "slater:D=8:modes=0,1,2,3", "--M", "1,2,3"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    for (const auto& lvl : j["levels"]) CHECK(lvl["verdict"] == "FirstMoreMixed");

    const auto fig = run({"figure1", "--D", "30", "--M", "2"});
    REQUIRE(fig.code == kExitOk);
    CHECK(fig.out.find("8,2,4.26666666666667\n") != std::string::npos);
    CHECK(run({"majorize", "--a", "ghz:D=8:q=1", "--b", "ghz:D=8"}).code == kExitInput);
}
