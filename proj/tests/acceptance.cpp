// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion; an optional
// argument selects a single criterion by number.

#include <mbent/channels.hpp>
#include <mbent/cli.hpp>
#include <mbent/entanglement.hpp>
#include <mbent/mbody.hpp>
#include <mbent/oracles.hpp>
#include <mbent/random.hpp>
#include <mbent/states.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace mbent;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::function<Result()> run;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string fix(double x, int digits = 6) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::max(a.size(), b.size());
    double out = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        out = std::max(out, std::abs(x - y));
    }
    return out;
}

// The random suite shared by the trace and partner criteria: D in [2, 8], N in [0, D].
PureState suite_state(std::uint64_t i) {
    const int D = 2 + static_cast<int>(i % 7);
    const int N = static_cast<int>((i / 7) % static_cast<std::uint64_t>(D + 1));
    return make_random(D, N, 1000 + i);
}

Result trace_rule() {
    double worst = 0.0;
    int levels = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const PureState psi = suite_state(i);
        for (int M = 0; M <= psi.particles(); ++M) {
            const double t = rho_m(psi, M).trace();
            worst = std::max(worst, std::abs(t - static_cast<double>(binom(psi.particles(), M))));
            ++levels;
        }
    }
    return {worst < 1e-10, "200 states, " + std::to_string(levels) + " levels, max deviation " + sci(worst)};
}

Result partner_spectra() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const PureState psi = suite_state(i);
        for (int M = 0; M <= psi.particles(); ++M) {
            const Spectrum a(mbody_spectrum(psi, M));
            const Spectrum b(mbody_spectrum(psi, psi.particles() - M));
            worst = std::max(worst, max_gap(a.nonzero(1e-10), b.nonzero(1e-10)));
            if (a.nonzero(1e-10).size() != b.nonzero(1e-10).size()) worst = std::max(worst, 1.0);
        }
    }
    return {worst < 1e-10, "200 states, max nonzero-eigenvalue gap " + sci(worst)};
}

Result pair_condensate_oracle() {
    double worst = 0.0;
    bool multiplicities = true;
    int cases = 0;
    for (int D : {8, 10, 12, 14}) {
        for (int k = 0; k <= D / 2; ++k) {
            for (int M = 1; M <= std::min(3, 2 * k); ++M) {
                const auto exact = pair_condensate_spectrum(D, k, M);
                const auto numeric = mbody_spectrum(make_pair_condensate(D, k), M);
                worst = std::max(worst, max_gap(exact.expanded(numeric.size()), numeric));
                std::vector<std::pair<double, std::uint64_t>> got;
                for (const auto& c : cluster_spectrum(numeric))
                    if (c.first > 1e-8) got.push_back(c);
                if (got.size() != exact.entries.size()) multiplicities = false;
                else
                    for (std::size_t i = 0; i < got.size(); ++i)
                        if (got[i].second != exact.entries[i].second) multiplicities = false;
                ++cases;
            }
        }
    }
    const auto m2 = cluster_spectrum(mbody_spectrum(make_pair_condensate(12, 3), 2));
    const auto m3 = cluster_spectrum(mbody_spectrum(make_pair_condensate(12, 3), 3));
    const bool example = m2.size() >= 2 && std::abs(m2[0].first - 2.0) < 1e-10 && m2[0].second == 1 &&
                         std::abs(m2[1].first - 0.2) < 1e-10 && m2[1].second == 65 && m3.size() >= 2 &&
                         std::abs(m3[0].first - 0.8) < 1e-10 && m3[0].second == 12 &&
                         std::abs(m3[1].first - 0.05) < 1e-10 && m3[1].second == 208;
    return {worst < 1e-10 && multiplicities && example,
            std::to_string(cases) + " cases, max deviation " + sci(worst) + ", multiplicities " +
                (multiplicities ? "match" : "differ") + ", D=12 k=3 examples " + (example ? "match" : "differ")};
}

Result figure_table() {
    const auto start = std::chrono::steady_clock::now();
    const char* argv[] = {"mbent", "figure1", "--D", "30", "--M", "1,2,3,4"};
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(6, argv, out, err);

    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    const bool header = line == "k,M,lambda_max";
    int rows = 0;
    int peak_k = 0;
    double peak = 0.0;
    double analytic_gap = 0.0;
    while (std::getline(lines, line)) {
        int k = 0;
        int M = 0;
        double v = 0.0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf", &k, &M, &v) != 3) continue;
        ++rows;
        if (M == 2 && v > peak) {
            peak = v;
            peak_k = k;
        }
        // Closed forms: M=1 is 2k/D, M=2 is k(1 - 2(k-1)/D).
        if (M == 1) analytic_gap = std::max(analytic_gap, std::abs(v - 2.0 * k / 30.0));
        if (M == 2) analytic_gap = std::max(analytic_gap, std::abs(v - k * (1.0 - 2.0 * (k - 1) / 30.0)));
    }

    double numeric_gap = 0.0;
    const std::vector<int> Ms{1, 2, 3, 4};
    for (const auto& r : figure1_data(12, Ms)) {
        const double top = r.M <= 2 * r.k ? mbody_spectrum(make_pair_condensate(12, r.k), r.M).front() : 0.0;
        numeric_gap = std::max(numeric_gap, std::abs(top - r.lambda_max));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = code == 0 && header && rows == 56 && peak_k == 8 && std::abs(peak - 64.0 / 15.0) < 1e-12 &&
                      analytic_gap < 1e-12 && numeric_gap < 1e-10 && seconds < 60.0;
    return {pass, std::to_string(rows) + " rows at D=30, M=2 peak " + fix(peak, 4) + " at k=" + std::to_string(peak_k) +
                      ", D=12 numeric gap " + sci(numeric_gap) + ", " + fix(seconds, 2) + " s"};
}

Result boson_threshold() {
    bool threshold = true;
    for (int D = 6; D <= 60; D += 2)
        for (int k = 1; k <= D / 2; ++k) {
            const bool above = pair_condensate_spectrum(D, k, 2).max() > 1.0 + 1e-12;
            if (above != (k >= 2 && k <= D / 2 - 1)) threshold = false;
        }
    for (int D = 6; D <= 12; D += 2)
        for (int k = 1; k <= D / 2; ++k) {
            const bool above = mbody_spectrum(make_pair_condensate(D, k), 2).front() > 1.0 + 1e-10;
            if (above != (k >= 2 && k <= D / 2 - 1)) threshold = false;
        }
    double gap = 0.0;
    for (int k = 2; k <= 6; ++k)
        gap = std::max(gap, std::abs(lambda_2m_max(12, k, 2) - mbody_spectrum(make_pair_condensate(12, k), 4).front()));
    const double at3 = mbody_spectrum(make_pair_condensate(12, 3), 4).front();
    const bool pass = threshold && gap < 1e-10 && std::abs(at3 - 2.0) < 1e-10;
    return {pass, std::string("threshold ") + (threshold ? "holds" : "fails") + " for D <= 60, rho^(4) gap " + sci(gap) +
                      ", D=12 k=3 top " + fix(at3, 10)};
}

struct SuiteTally {
    int states = 0;
    int failures = 0;
    double worst_mixture = 0.0;
};

void tally(SuiteTally& t, const MeasurementReport& rep) {
    for (const auto& level : rep.levels) t.worst_mixture = std::max(t.worst_mixture, level.mixture_deviation);
    bool entropies = true;
    for (const auto& level : rep.levels) {
        bool vn = false;
        bool bos = false;
        for (const auto& e : level.entropies) {
            if (e.functional == "von-neumann") vn = e.holds;
            if (e.functional == "bosonic") bos = e.holds;
        }
        entropies = entropies && vn && bos;
    }
    if (!rep.all_hold(1e-10, 1e-12) || !entropies) ++t.failures;
}

Result single_removal() {
    SuiteTally t;
    const std::vector<int> Ms{1, 2, 3};
    for (std::uint64_t s = 0; s < 100; ++s, ++t.states) {
        const PureState psi = make_random(8, 4, 5000 + s);
        tally(t, verify_measurement(psi, measure_single_fermion(psi), Ms));
    }
    return {t.failures == 0, std::to_string(t.states) + " states, " + std::to_string(t.failures) +
                                 " failures, max mixture deviation " + sci(t.worst_mixture)};
}

Result l_body_removal() {
    SuiteTally t;
    for (int L = 1; L <= 2; ++L) {
        std::vector<int> Ms;
        for (int M = 1; M <= 4 - L; ++M) Ms.push_back(M);
        for (std::uint64_t s = 0; s < 100; ++s, ++t.states) {
            const PureState psi = make_random(8, 4, 6000 + s);
            tally(t, verify_measurement(psi, measure_l_body(psi, L), Ms));
        }
    }
    return {t.failures == 0, std::to_string(t.states) + " state-channel pairs (L=1,2), " + std::to_string(t.failures) +
                                 " failures, max mixture deviation " + sci(t.worst_mixture)};
}

Result occupancy_bounds() {
    const auto r = appendix_b_report(12, 3);
    const bool closed = std::abs(r.lambda_max - 2.0) < 1e-12 && std::abs(r.occupied_branch - 1.6) < 1e-12 &&
                        std::abs(r.empty_branch - 1.8) < 1e-12 && std::abs(r.average - 1.7) < 1e-12 &&
                        r.violation && std::abs(r.apc_post - 0.16) < 1e-12 &&
                        std::abs(r.apc_initial - 2.0 / 15.0) < 1e-12 && r.apc_holds;

    const PureState psi = make_pair_condensate(12, 3);
    double gap = 0.0;
    double occ_average = 0.0;
    for (int mode = 0; mode < 12; ++mode) {
        double avg = 0.0;
        for (const auto& o : measure_occupancy(psi, mode)) avg += o.probability * mbody_spectrum(o.post_state, 2).front();
        gap = std::max(gap, std::abs(avg - r.average));
        if (mode == 0) occ_average = avg;
    }
    const double initial = mbody_spectrum(psi, 2).front();
    gap = std::max(gap, std::abs(initial - r.lambda_max));

    double single_avg = 0.0;
    for (const auto& o : measure_single_fermion(psi))
        single_avg += o.probability * mbody_spectrum(o.post_state, 2).front() / static_cast<double>(binom(5, 2));
    gap = std::max(gap, std::abs(single_avg - r.apc_post));
    gap = std::max(gap, std::abs(initial / static_cast<double>(binom(6, 2)) - r.apc_initial));

    const bool numeric = gap < 1e-10 && occ_average < initial;
    return {closed && numeric, "occupancy average " + fix(occ_average, 10) + " < " + fix(initial, 10) +
                                   ", normalized single-removal top " + fix(single_avg, 10) + " >= " +
                                   fix(initial / 15.0, 10) + ", channel vs closed form " + sci(gap)};
}

Result transfer_map() {
    Matrix g = Matrix::Zero(4, 4);
    g(0, 1) = std::sqrt(0.8);
    g(1, 0) = -std::sqrt(0.8);
    g(2, 3) = std::sqrt(0.2);
    g(3, 2) = -std::sqrt(0.2);
    const PureState two = make_two_fermion(g);
    const TransferMap uniform = uniform_transfer_map(4, 4, 1);
    const auto outcomes = apply_transfer_map(two, uniform);
    const std::vector<double> expected{0.4, 0.4, 0.1, 0.1};
    const double gap = outcomes.size() == 1 ? max_gap(reduced_state_A(outcomes[0].post_state).eigenvalues(), expected) : 1.0;
    const auto rep = verify_transfer_majorization(two, uniform);

    int violations = 0;
    int checks = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const PureState psi = make_random(6, 3, 7000 + s);
        for (int M = 1; M <= 2; ++M) {
            const auto r = verify_transfer_majorization(psi, random_transfer_map(6, 6, M, 2, 2 * s + 1));
            bool ok = r.majorized && std::abs(r.total_probability - 1.0) < 1e-10;
            for (const auto& e : r.entropies) ok = ok && e.holds;
            violations += ok ? 0 : 1;
            ++checks;
        }
    }
    const bool pass = gap < 1e-10 && rep.saturated && violations == 0;
    return {pass, "uniform map spectrum gap " + sci(gap) + (rep.saturated ? ", saturated" : ", not saturated") + ", " +
                      std::to_string(violations) + " violations in " + std::to_string(checks) + " random-map checks"};
}

Result two_fermion() {
    Rng rng(8080);
    double degeneracy = 0.0;
    double match = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Matrix a = random_gaussian(4, 4, rng);
        const PureState psi = make_two_fermion(a - a.transpose());
        const auto s = mbody_spectrum(psi, 1);
        degeneracy = std::max({degeneracy, std::abs(s[0] - s[1]), std::abs(s[2] - s[3])});
        const auto [lp, lm] = concurrence_eigenvalues(concurrence_d4(psi));
        match = std::max({match, std::abs(s[0] - lp), std::abs(s[2] - lm)});
    }
    return {degeneracy < 1e-10 && match < 1e-10,
            "100 states, degeneracy gap " + sci(degeneracy) + ", concurrence formula gap " + sci(match)};
}

Result majorization_examples() {
    const std::vector<int> sd8{0, 1, 2, 3};
    bool ghz_ok = true;
    for (int M = 1; M <= 3; ++M) {
        const auto v = majorize_compare(Spectrum(mbody_spectrum(make_ghz(8), M)),
                                        Spectrum(mbody_spectrum(make_slater(8, sd8), M)));
        ghz_ok = ghz_ok && v.verdict == Verdict::FirstMoreMixed;
    }
    const std::vector<int> sd12{0, 1, 2, 3, 4, 5};
    std::string pc;
    bool pc_ok = true;
    const auto clusters = [](const std::vector<double>& s) {
        std::string out;
        for (const auto& [v, m] : cluster_spectrum(s))
            if (v > 1e-8) out += (out.empty() ? "" : " ") + fix(v, 4) + " x" + std::to_string(m);
        return out;
    };
    for (int M = 2; M <= 3; ++M) {
        const auto a = mbody_spectrum(make_pair_condensate(12, 3), M);
        const auto b = mbody_spectrum(make_slater(12, sd12), M);
        const auto v = majorize_compare(Spectrum(a), Spectrum(b));
        pc_ok = pc_ok && v.verdict == Verdict::Incomparable;
        pc += ", pair condensate M=" + std::to_string(M) + " " + std::string(to_string(v.verdict));
        if (v.verdict != Verdict::Incomparable) pc += " {" + clusters(a) + "} vs {" + clusters(b) + "}";
    }
    return {ghz_ok && pc_ok, std::string("GHZ vs determinant M=1..3 ") + (ghz_ok ? "FirstMoreMixed" : "mismatch") + pc};
}

Result unitary_invariance() {
    Rng rng(1234);
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const PureState psi = make_random(8, 4, 9000 + t);
        const PureState moved = one_body_unitary(psi, random_unitary(8, rng));
        for (int M = 0; M <= 4; ++M) worst = std::max(worst, max_gap(mbody_spectrum(psi, M), mbody_spectrum(moved, M)));
    }
    return {worst < 1e-10, "50 unitaries, max spectral change " + sci(worst)};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "trace rule", trace_rule},
        {2, "partner spectra", partner_spectra},
        {3, "pair-condensate spectra", pair_condensate_oracle},
        {4, "largest-eigenvalue table", figure_table},
        {5, "boson threshold", boson_threshold},
        {6, "single-fermion removal", single_removal},
        {7, "L-fermion removal", l_body_removal},
        {8, "occupancy measurement", occupancy_bounds},
        {9, "transfer map", transfer_map},
        {10, "two-fermion structure", two_fermion},
        {11, "majorization verdicts", majorization_examples},
        {12, "unitary invariance", unitary_invariance},
    };
    int selected = 0;
    if (argc > 1) {
        selected = std::atoi(argv[1]);
        if (selected < 1 || selected > static_cast<int>(criteria.size())) {
            std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]\n";
            return 3;
        }
    }
    int failures = 0;
    for (const auto& c : criteria) {
        if (selected != 0 && c.id != selected) continue;
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << ": " << r.detail << '\n';
        failures += r.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
