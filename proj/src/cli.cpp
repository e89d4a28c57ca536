// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/channels.hpp>
#include <mbent/cli.hpp>
#include <mbent/entanglement.hpp>
#include <mbent/io.hpp>
#include <mbent/mbody.hpp>
#include <mbent/oracles.hpp>
#include <mbent/states.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbent {

namespace {

// ---------------------------------------------------------------------------
// Shared options
// ---------------------------------------------------------------------------

double env_tolerance(double fallback) {
    const char* v = std::getenv("MBENT_TOL");
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument(std::string("MBENT_TOL='") + v + "' is not a positive number");
    return t;
}

struct StateOptions {
    std::string family;
    std::string state_file;
    int D = 0;
    int k = -1;
    int N = -1;
    std::vector<int> modes;
    std::vector<std::string> pairs;
    std::uint64_t seed = 1;
};

void add_state_options(CLI::App* app, StateOptions& o) {
    app->add_option("--family", o.family, "slater | pair-condensate | ghz | odd-pair-condensate | two-fermion | random");
    app->add_option("--state", o.state_file, "JSON state file");
    app->add_option("--D", o.D, "number of single-particle modes");
    app->add_option("--k", o.k, "number of pairs");
    app->add_option("--N", o.N, "particle number (random family)");
    app->add_option("--modes", o.modes, "occupied modes of a Slater determinant")->delimiter(',');
    app->add_option("--pair", o.pairs, "two-fermion amplitude i,j,re[,im] (repeatable)");
    app->add_option("--seed", o.seed, "random seed");
}

Matrix parse_pairs(int D, const std::vector<std::string>& pairs) {
    if (D < 1) throw std::invalid_argument("two-fermion state needs --D");
    Matrix g = Matrix::Zero(D, D);
    for (const auto& p : pairs) {
        std::vector<std::string> parts;
        std::stringstream ss(p);
        for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
        if (parts.size() != 3 && parts.size() != 4)
            throw std::invalid_argument("--pair expects i,j,re[,im], got '" + p + "'");
        try {
            const int i = std::stoi(parts[0]);
            const int j = std::stoi(parts[1]);
            const Complex v{std::stod(parts[2]), parts.size() == 4 ? std::stod(parts[3]) : 0.0};
            if (i < 0 || j < 0 || i >= D || j >= D || i == j)
                throw std::invalid_argument("--pair modes must be distinct and inside [0, D)");
            g(i, j) += v;
            g(j, i) -= v;
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse --pair '" + p + "'");
        }
    }
    return g;
}

PureState build_state(const StateOptions& o, std::uint64_t seed_offset = 0) {
    if (!o.state_file.empty()) {
        if (!o.family.empty()) throw std::invalid_argument("--state and --family are mutually exclusive");
        return read_state_file(o.state_file);
    }
    if (o.family.empty()) throw std::invalid_argument("a state source is required (--family or --state)");
    StateFamilySpec spec;
    spec.family = parse_state_family(o.family);
    spec.D = o.D;
    spec.seed = o.seed + seed_offset;
    switch (spec.family) {
    case StateFamily::Slater:
        spec.occupied = o.modes;
        break;
    case StateFamily::PairCondensate:
    case StateFamily::OddPairCondensate:
        if (o.k < 0) throw std::invalid_argument(o.family + " needs --k");
        spec.k = o.k;
        break;
    case StateFamily::Random:
        if (o.N < 0) throw std::invalid_argument("random family needs --N");
        spec.N = o.N;
        break;
    case StateFamily::TwoFermion:
        spec.gamma = parse_pairs(o.D, o.pairs);
        break;
    case StateFamily::Ghz:
        break;
    }
    return make_state(spec);
}

/// "family:key=value:..." or a JSON file path.
PureState state_from_descriptor(const std::string& desc) {
    if (desc.find(':') == std::string::npos && std::filesystem::exists(desc)) return read_state_file(desc);
    std::vector<std::string> parts;
    std::stringstream ss(desc);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw std::invalid_argument("empty state descriptor");
    StateOptions o;
    o.family = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) throw std::invalid_argument("descriptor field '" + parts[i] + "' lacks '='");
        const std::string key = parts[i].substr(0, eq);
        const std::string val = parts[i].substr(eq + 1);
        try {
            if (key == "D") o.D = std::stoi(val);
            else if (key == "k") o.k = std::stoi(val);
            else if (key == "N") o.N = std::stoi(val);
            else if (key == "seed") o.seed = std::stoull(val);
            else if (key == "pair") o.pairs.push_back(val);
            else if (key == "modes") {
                std::stringstream ms(val);
                for (std::string m; std::getline(ms, m, ',');) o.modes.push_back(std::stoi(m));
            } else throw std::invalid_argument("unknown descriptor key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse descriptor value '" + val + "'");
        }
    }
    return build_state(o);
}

std::vector<int> default_orders(int lo, int hi) {
    std::vector<int> out;
    for (int m = lo; m <= hi; ++m) out.push_back(m);
    return out;
}

Json optional_index(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json verdict_json(const MajorizationVerdict& v) {
    return Json{{"verdict", std::string(to_string(v.verdict))},
                {"first_violation", optional_index(v.first_violation)},
                {"second_violation", optional_index(v.second_violation)},
                {"prefix_a", v.prefix_a},
                {"prefix_b", v.prefix_b},
                {"tol", v.tol}};
}

Json entropy_checks_json(const std::vector<EntropyCheck>& checks) {
    Json out = Json::array();
    for (const auto& e : checks)
        out.push_back(Json{{"functional", e.functional}, {"initial", e.initial}, {"average", e.average}, {"holds", e.holds}});
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct SpectrumOptions {
    StateOptions state;
    std::vector<int> Ms;
    std::string format = "json";
    std::string entropy = "von-neumann";
    double tol = 0.0;
    bool dump_matrix = false;
};

int cmd_spectrum(const SpectrumOptions& o, std::ostream& out) {
    const PureState psi = build_state(o.state);
    const int N = psi.particles();
    const std::vector<int> Ms = o.Ms.empty() ? default_orders(0, N) : o.Ms;
    std::vector<EntropyFunctional> fs;
    if (o.entropy == "all") fs = builtin_entropies();
    else fs.push_back(entropy_functional(o.entropy));

    bool ok = true;
    Json levels = Json::array();
    std::string csv = Ms.size() == 1 ? "index,eigenvalue\n" : "M,index,eigenvalue\n";
    for (int M : Ms) {
        if (M < 0 || M > N) throw std::invalid_argument("M=" + std::to_string(M) + " outside [0, N]");
        const MBodyDM dm = rho_m(psi, M);
        const Spectrum s(dm.eigenvalues());
        const double expected = static_cast<double>(binom(N, M)) * psi.norm_squared();
        const bool trace_ok = std::abs(dm.trace() - expected) < o.tol;
        const PartnerSpectrumCheck partner = partner_spectrum_check(psi, M, o.tol);
        ok = ok && trace_ok && partner.agree;

        Json ent = Json::array();
        for (const auto& f : fs) {
            Json e{{"functional", f.name}, {"log_base", f.log_base}, {"raw", entropy(s, f)}};
            e["normalized"] = (M >= 1 && M <= N - 1) ? Json(normalized_entropy(psi, M, f)) : Json(nullptr);
            ent.push_back(std::move(e));
        }
        Json lvl{{"M", M},
                 {"spectrum", s.values()},
                 {"trace", dm.trace()},
                 {"expected_trace", expected},
                 {"trace_ok", trace_ok},
                 {"partner_M", N - M},
                 {"partner_deviation", partner.max_deviation},
                 {"partner_ok", partner.agree},
                 {"entropy", std::move(ent)}};
        if (o.dump_matrix) lvl["matrix"] = matrix_to_json(dm.matrix, psi.modes());
        levels.push_back(std::move(lvl));
        for (std::size_t i = 0; i < s.size(); ++i)
            csv += (Ms.size() == 1 ? "" : std::to_string(M) + ",") + std::to_string(i) + "," + format_number(s[i]) + "\n";
    }
    if (o.format == "csv") out << csv;
    else out << Json{{"D", psi.modes()}, {"N", N}, {"levels", std::move(levels)}, {"ok", ok}}.dump(2) << '\n';
    return ok ? kExitOk : kExitAssertion;
}

struct MeasureOptions {
    StateOptions state;
    std::string channel = "single";
    int L = 1;
    int mode = 0;
    std::vector<int> Ms;
    int trials = 1;
    double tol = 0.0;
};

int cmd_measure(const MeasureOptions& o, std::ostream& out) {
    if (o.trials < 1) throw std::invalid_argument("--trials must be positive");
    if (o.trials > 1 && o.state.family != "random")
        throw std::invalid_argument("--trials > 1 needs --family random");
    const bool occupancy = o.channel == "occupancy";

    int passes = 0;
    Json results = Json::array();
    for (int t = 0; t < o.trials; ++t) {
        const PureState psi = build_state(o.state, static_cast<std::uint64_t>(t));
        const int N = psi.particles();
        std::vector<PureOutcome> outcomes;
        int post_n = N;
        if (o.channel == "single") {
            outcomes = measure_single_fermion(psi);
            post_n = N - 1;
        } else if (o.channel == "lbody") {
            outcomes = measure_l_body(psi, o.L);
            post_n = N - o.L;
        } else {
            outcomes = measure_occupancy(psi, o.mode);
        }
        const std::vector<int> Ms = o.Ms.empty() ? (occupancy ? std::vector<int>{1} : default_orders(1, post_n)) : o.Ms;
        const MeasurementReport rep = verify_measurement(psi, outcomes, Ms, o.tol);

        bool pass = std::abs(rep.total_probability - 1.0) <= 1e-10;
        Json levels = Json::array();
        for (const auto& l : rep.levels) {
            // Occupancy measurements only guarantee the one-body relation.
            const bool asserted = !occupancy || l.M == 1;
            bool level_ok = l.majorized;
            if (!occupancy) {
                level_ok = level_ok && l.mixture_deviation <= 1e-12;
                for (const auto& e : l.entropies) level_ok = level_ok && e.holds;
            }
            if (asserted) pass = pass && level_ok;
            Json v = verdict_json(l.verdict);
            levels.push_back(Json{{"M", l.M},
                                  {"asserted", asserted},
                                  {"mixture_deviation", l.mixture_deviation},
                                  {"initial", l.initial.values()},
                                  {"average", l.average.values()},
                                  {"majorized", l.majorized},
                                  {"top_initial", l.initial.max()},
                                  {"top_average", l.average.max()},
                                  {"verdict", v["verdict"]},
                                  {"first_violation", v["first_violation"]},
                                  {"prefix_initial", l.verdict.prefix_a},
                                  {"prefix_average", l.verdict.prefix_b},
                                  {"entropies", entropy_checks_json(l.entropies)}});
        }
        Json trial{{"total_probability", rep.total_probability}, {"levels", std::move(levels)}, {"pass", pass}};
        if (o.state.family == "random") trial["seed"] = o.state.seed + static_cast<std::uint64_t>(t);
        if (o.trials == 1) {
            Json outs = Json::array();
            for (const auto& oc : outcomes) {
                Json spectra = Json::object();
                for (int M : Ms)
                    spectra[std::to_string(M)] =
                        Spectrum(mbody_spectrum(oc.post_state, M)).scaled(1.0 / static_cast<double>(binom(post_n, M))).values();
                outs.push_back(Json{{"outcome", oc.label.to_string()}, {"probability", oc.probability}, {"spectra", spectra}});
            }
            trial["outcomes"] = std::move(outs);
        }
        passes += pass ? 1 : 0;
        results.push_back(std::move(trial));
    }
    out << Json{{"channel", o.channel}, {"trials", o.trials}, {"passes", passes}, {"results", std::move(results)}}.dump(2)
        << '\n';
    return passes == o.trials ? kExitOk : kExitAssertion;
}

struct MapOptions {
    StateOptions state;
    std::string map = "uniform";
    int D_A = -1;
    int M = 1;
    int outcomes = 2;
    int trials = 1;
    double tol = 0.0;
};

int cmd_map(const MapOptions& o, std::ostream& out) {
    if (o.trials < 1) throw std::invalid_argument("--trials must be positive");
    if (o.trials > 1 && o.map != "random" && o.state.family != "random")
        throw std::invalid_argument("--trials > 1 needs a random map or a random state");
    int passes = 0;
    Json results = Json::array();
    for (int t = 0; t < o.trials; ++t) {
        const auto offset = static_cast<std::uint64_t>(t);
        const PureState psi = build_state(o.state, offset);
        const int D = psi.modes();
        TransferMap map;
        if (o.map == "uniform") map = uniform_transfer_map(D, o.D_A < 0 ? D : o.D_A, o.M);
        else if (o.map == "mode-tagged") map = mode_tagged_transfer_map(D, o.D_A < 0 ? o.M : o.D_A, o.M);
        else if (o.map == "random")
            map = random_transfer_map(D, o.D_A < 0 ? D : o.D_A, o.M, o.outcomes, 2 * (o.state.seed + offset) + 1);
        else map = read_transfer_map_file(o.map);

        const TransferReport rep = verify_transfer_majorization(psi, map, o.tol);
        bool ent_ok = true;
        for (const auto& e : rep.entropies) ent_ok = ent_ok && e.holds;
        const bool pass = rep.majorized && ent_ok && std::abs(rep.total_probability - 1.0) <= 1e-10;
        passes += pass ? 1 : 0;
        Json v = verdict_json(rep.verdict);
        Json trial{{"total_probability", rep.total_probability},
                   {"initial", rep.initial.values()},
                   {"average", rep.average.values()},
                   {"majorized", rep.majorized},
                   {"saturated", rep.saturated},
                   {"verdict", v["verdict"]},
                   {"first_violation", v["first_violation"]},
                   {"prefix_initial", rep.verdict.prefix_a},
                   {"prefix_average", rep.verdict.prefix_b},
                   {"entropies", entropy_checks_json(rep.entropies)},
                   {"pass", pass}};
        if (o.trials == 1) {
            Json outs = Json::array();
            for (const auto& oc : apply_transfer_map(psi, map))
                outs.push_back(Json{{"outcome", oc.label.to_string()},
                                    {"probability", oc.probability},
                                    {"spectrum_A", Spectrum(reduced_state_A(oc.post_state).eigenvalues()).values()}});
            trial["outcomes"] = std::move(outs);
        }
        results.push_back(std::move(trial));
    }
    out << Json{{"map", o.map}, {"M", o.M}, {"trials", o.trials}, {"passes", passes}, {"results", std::move(results)}}.dump(2)
        << '\n';
    return passes == o.trials ? kExitOk : kExitAssertion;
}

struct MajorizeOptions {
    std::string a;
    std::string b;
    std::vector<int> Ms;
    bool normalize = false;
    double tol = 0.0;
};

int cmd_majorize(const MajorizeOptions& o, std::ostream& out) {
    const PureState a = state_from_descriptor(o.a);
    const PureState b = state_from_descriptor(o.b);
    if (a.modes() != b.modes()) throw std::invalid_argument("states live in different mode counts");
    const int nmin = std::min(a.particles(), b.particles());
    const std::vector<int> Ms = o.Ms.empty() ? default_orders(1, nmin - 1) : o.Ms;
    Json levels = Json::array();
    for (int M : Ms) {
        if (M < 0 || M > nmin) throw std::invalid_argument("M=" + std::to_string(M) + " outside both particle ranges");
        Spectrum sa(mbody_spectrum(a, M));
        Spectrum sb(mbody_spectrum(b, M));
        if (o.normalize) {
            sa = sa.normalized();
            sb = sb.normalized();
        }
        const MajorizationVerdict v = majorize_compare(sa, sb, o.tol);
        Json lvl = verdict_json(v);
        lvl["M"] = M;
        lvl["spectrum_a"] = sa.values();
        lvl["spectrum_b"] = sb.values();
        levels.push_back(std::move(lvl));
    }
    out << Json{{"a", o.a}, {"b", o.b}, {"normalized", o.normalize}, {"levels", std::move(levels)}}.dump(2) << '\n';
    return kExitOk;
}

struct Figure1Options {
    int D = 30;
    std::vector<int> Ms{1, 2, 3, 4};
    std::string format = "csv";
};

int cmd_figure1(const Figure1Options& o, std::ostream& out) {
    const auto rows = figure1_data(o.D, o.Ms);
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(Json{{"k", r.k}, {"M", r.M}, {"lambda_max", r.lambda_max}});
        out << arr.dump(2) << '\n';
    } else {
        out << "k,M,lambda_max\n";
        for (const auto& r : rows) out << r.k << ',' << r.M << ',' << format_number(r.lambda_max) << '\n';
    }
    return kExitOk;
}

struct MakeStateOptions {
    StateOptions state;
    std::string output;
};

int cmd_make_state(const MakeStateOptions& o, std::ostream& out) {
    const PureState psi = build_state(o.state);
    if (!o.output.empty()) write_state_file(o.output, psi);
    else out << serialize_state(psi) << '\n';
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Many-body entanglement of fermionic states"};
    app.name("mbent");
    app.require_subcommand(1);

    double default_tol = 0.0;
    try {
        default_tol = env_tolerance(0.0);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    const auto tol_or = [&](double fallback) { return default_tol > 0.0 ? default_tol : fallback; };

    MakeStateOptions make_opts;
    auto* make = app.add_subcommand("make-state", "build a named state and print it as JSON");
    add_state_options(make, make_opts.state);
    make->add_option("--output", make_opts.output, "write to a file instead of stdout");

    SpectrumOptions spec_opts;
    spec_opts.tol = tol_or(1e-10);
    auto* spec = app.add_subcommand("spectrum", "M-body density-matrix spectra, trace and partner checks");
    add_state_options(spec, spec_opts.state);
    spec->add_option("--M", spec_opts.Ms, "orders to evaluate (default 0..N)")->delimiter(',');
    spec->add_option("--format", spec_opts.format)->check(CLI::IsMember({"json", "csv"}));
    spec->add_option("--entropy", spec_opts.entropy, "von-neumann | bosonic | linear | all");
    spec->add_option("--tol", spec_opts.tol, "tolerance of the trace and partner checks")->check(CLI::PositiveNumber);
    spec->add_flag("--dump-matrix", spec_opts.dump_matrix, "include the dense matrix (D <= 8)");

    MeasureOptions meas_opts;
    meas_opts.tol = tol_or(kMajorizationTol);
    auto* meas = app.add_subcommand("measure", "measurement channels and their majorization relations");
    add_state_options(meas, meas_opts.state);
    meas->add_option("--channel", meas_opts.channel)->check(CLI::IsMember({"single", "lbody", "occupancy"}));
    meas->add_option("--L", meas_opts.L, "fermions removed by the lbody channel");
    meas->add_option("--mode", meas_opts.mode, "mode probed by the occupancy channel");
    meas->add_option("--M", meas_opts.Ms, "orders to verify")->delimiter(',');
    meas->add_option("--trials", meas_opts.trials, "random states to draw (random family)");
    meas->add_option("--tol", meas_opts.tol, "prefix-sum tolerance")->check(CLI::PositiveNumber);

    MapOptions map_opts;
    map_opts.tol = tol_or(kMajorizationTol);
    auto* map = app.add_subcommand("map-bipartite", "transfer M fermions into an empty register");
    map->alias("map");
    add_state_options(map, map_opts.state);
    map->add_option("--map", map_opts.map, "uniform | mode-tagged | random | JSON file");
    map->add_option("--DA", map_opts.D_A, "register modes");
    map->add_option("--M", map_opts.M, "fermions transferred");
    map->add_option("--outcomes", map_opts.outcomes, "Kraus operators of the random map");
    map->add_option("--trials", map_opts.trials, "independent draws");
    map->add_option("--tol", map_opts.tol, "prefix-sum tolerance")->check(CLI::PositiveNumber);

    MajorizeOptions maj_opts;
    maj_opts.tol = tol_or(kMajorizationTol);
    auto* maj = app.add_subcommand("majorize", "compare two states' M-body spectra");
    maj->add_option("--a", maj_opts.a, "family:key=value:... or JSON file")->required();
    maj->add_option("--b", maj_opts.b, "family:key=value:... or JSON file")->required();
    maj->add_option("--M", maj_opts.Ms, "orders to compare")->delimiter(',');
    maj->add_flag("--normalize", maj_opts.normalize, "divide each spectrum by its trace");
    maj->add_option("--tol", maj_opts.tol, "prefix-sum tolerance")->check(CLI::PositiveNumber);

    Figure1Options fig_opts;
    auto* fig = app.add_subcommand("figure1", "largest M-body eigenvalue of pair condensates versus k");
    fig->add_option("--D", fig_opts.D, "even number of modes");
    fig->add_option("--M", fig_opts.Ms, "orders in {1,2,3,4}")->delimiter(',');
    fig->add_option("--format", fig_opts.format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*make) return cmd_make_state(make_opts, out);
        if (*spec) return cmd_spectrum(spec_opts, out);
        if (*meas) return cmd_measure(meas_opts, out);
        if (*map) return cmd_map(map_opts, out);
        if (*maj) return cmd_majorize(maj_opts, out);
        if (*fig) return cmd_figure1(fig_opts, out);
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

} // namespace mbent
