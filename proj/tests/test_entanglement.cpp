// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/entanglement.hpp>
#include <mbent/mbody.hpp>
#include <mbent/random.hpp>
#include <mbent/states.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace mbent;

namespace {

Spectrum spectrum_of(const PureState& psi, int M) { return Spectrum(mbody_spectrum(psi, M)); }

// Random probability vector of length n with a few exact zeros.
Spectrum random_distribution(std::mt19937_64& rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    double s = 0.0;
    for (auto& x : v) {
        x = rng() % 5 == 0 ? 0.0 : e(rng);
        s += x;
    }
    if (s == 0.0) v[0] = s = 1.0;
    for (auto& x : v) x /= s;
    return Spectrum(v);
}

// Doubly stochastic mixing T = t I + (1 - t) P with a random permutation P.
Spectrum mix(const Spectrum& s, std::mt19937_64& rng) {
    std::vector<double> v = s.values();
    std::vector<std::size_t> perm(v.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = t * v[i] + (1.0 - t) * v[perm[i]];
    return Spectrum(out);
}

} // namespace

TEST_CASE("spectrum container") {
    const Spectrum s({0.1, 0.5, -1e-12, 0.4});
    CHECK(s.values() == std::vector<double>{0.5, 0.4, 0.1, 0.0});
    CHECK(std::abs(s.trace() - 1.0) < 1e-15);
    CHECK(s.padded(6).size() == 6);
    CHECK(s.padded(2).size() == 4);
    CHECK(s.prefix_sums().back() == doctest::Approx(1.0));
    CHECK(s.nonzero().size() == 3);
    CHECK(Spectrum({2.0, 2.0}).normalized()[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(Spectrum({0.5, -1e-6}), std::domain_error);
    CHECK_THROWS_AS((void)Spectrum({0.0}).normalized(), std::domain_error);
}

TEST_CASE("majorization verdicts") {
    const Spectrum ghz = spectrum_of(make_ghz(8), 2);
    const std::vector<int> occ{0, 1, 2, 3};
    const Spectrum sd = spectrum_of(make_slater(8, occ), 2);
    CHECK(majorize_compare(ghz, sd).verdict == Verdict::FirstMoreMixed);
    CHECK(majorize_compare(sd, ghz).verdict == Verdict::SecondMoreMixed);
    CHECK(majorize_compare(ghz, ghz).verdict == Verdict::Equivalent);

    const Spectrum pc = spectrum_of(make_pair_condensate(12, 3), 2);
    const std::vector<int> occ6{0, 1, 2, 3, 4, 5};
    const Spectrum sd6 = spectrum_of(make_slater(12, occ6), 2);
    const auto v = majorize_compare(pc, sd6);
    CHECK(v.verdict == Verdict::Incomparable);
    REQUIRE(v.first_violation);
    CHECK(*v.first_violation == 0);
    REQUIRE(v.second_violation);
    CHECK(*v.second_violation == 2);

    CHECK_THROWS_AS((void)majorize_compare(Spectrum({1.0}), Spectrum({0.5})), std::invalid_argument);
    CHECK(majorize_compare(Spectrum({0.5, 0.5}), Spectrum({1.0})).verdict == Verdict::FirstMoreMixed);
}

TEST_CASE("verdicts are antisymmetric and agree with normalized spectra") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const Spectrum a = random_distribution(rng, 6);
        const Spectrum b = random_distribution(rng, 6);
        const Verdict ab = majorize_compare(a, b).verdict;
        const Verdict ba = majorize_compare(b, a).verdict;
        CHECK((ab == Verdict::FirstMoreMixed) == (ba == Verdict::SecondMoreMixed));
        CHECK((ab == Verdict::Incomparable) == (ba == Verdict::Incomparable));
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PureState x = make_random(7, 3, seed);
        const PureState y = make_random(7, 3, seed + 100);
        for (int M = 1; M <= 2; ++M) {
            const Spectrum sx = spectrum_of(x, M);
            const Spectrum sy = spectrum_of(y, M);
            CHECK(majorize_compare(sx, sy).verdict ==
                  majorize_compare(sx.normalized(), sy.normalized(), 1e-9 / static_cast<double>(binom(3, M))).verdict);
        }
    }
}

TEST_CASE("entropy values") {
    const auto vn = von_neumann();
    const std::vector<int> occ{0, 1, 2, 3};
    CHECK(entropy(spectrum_of(make_slater(8, occ), 2).normalized(), vn) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    CHECK(entropy(spectrum_of(make_ghz(8), 2).normalized(), vn) == doctest::Approx(std::log2(12.0)).epsilon(1e-12));
    CHECK(normalized_entropy(make_ghz(8), 1, vn) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(entropy(Spectrum({0.5, 0.5, 0.0, 0.0}), vn) == doctest::Approx(1.0));
    CHECK(bosonic_like().f(1.0) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(linear_entropy().f(0.25) == doctest::Approx(0.1875));
    CHECK(entropy_functional("bosonic").log_base == "e");
    CHECK_THROWS_AS((void)entropy_functional("renyi"), std::invalid_argument);
}

TEST_CASE("normalized entropy of determinants and partner symmetry") {
    const std::vector<int> occ{0, 2, 3, 5, 6};
    const PureState sd = make_slater(8, occ);
    for (int M = 1; M <= 4; ++M)
        CHECK(normalized_entropy(sd, M, von_neumann()) == doctest::Approx(std::log2(static_cast<double>(binom(5, M)))));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const PureState psi = make_random(8, 5, seed);
        for (int M = 1; M <= 4; ++M) {
            for (const auto& f : builtin_entropies())
                CHECK(std::abs(normalized_entropy(psi, M, f) - normalized_entropy(psi, 5 - M, f)) < 1e-10);
            // S(rho/c) = S(rho)/c + log2 c for unit-trace rescaling by c = binom(N, M).
            const double c = static_cast<double>(binom(5, M));
            CHECK(std::abs(normalized_entropy(psi, M, von_neumann()) -
                           (raw_entropy(psi, M, von_neumann()) / c + std::log2(c))) < 1e-10);
        }
    }
    CHECK_THROWS_AS((void)normalized_entropy(sd, 0, von_neumann()), std::invalid_argument);
    CHECK_THROWS_AS((void)normalized_entropy(sd, 5, von_neumann()), std::invalid_argument);
}

TEST_CASE("built-in functionals are concave with f(0) = 0") {
    for (const auto& f : builtin_entropies()) {
        CHECK(is_concave_on_grid(f, 1.0));
        CHECK(is_concave_on_grid(f, 5.0));
    }
    const EntropyFunctional convex{"square", [](double x) { return x * x; }, "none"};
    CHECK_FALSE(is_concave_on_grid(convex, 1.0));
}

TEST_CASE("entropies are Schur-concave") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const Spectrum b = random_distribution(rng, 8);
        const Spectrum a = mix(b, rng);
        REQUIRE(majorized_by(a, b));
        const auto v = majorize_compare(a, b);
        CHECK((v.verdict == Verdict::FirstMoreMixed || v.verdict == Verdict::Equivalent));
        for (const auto& f : builtin_entropies()) CHECK(entropy(a, f) >= entropy(b, f) - 1e-10);
    }
}

TEST_CASE("two-fermion concurrence") {
    const auto build = [](Complex g01, Complex g23, Complex g02 = 0.0, Complex g13 = 0.0, Complex g03 = 0.0,
                          Complex g12 = 0.0) {
        Matrix g = Matrix::Zero(4, 4);
        g(0, 1) = g01;
        g(2, 3) = g23;
        g(0, 2) = g02;
        g(1, 3) = g13;
        g(0, 3) = g03;
        g(1, 2) = g12;
        return make_two_fermion(g - g.transpose().eval());
    };
    const PureState sd = build(1.0, 0.0);
    CHECK(concurrence_d4(sd) == doctest::Approx(0.0));
    const auto s0 = mbody_spectrum(sd, 1);
    CHECK(s0[0] == doctest::Approx(1.0));
    CHECK(s0[2] == doctest::Approx(0.0));

    const PureState max = build(std::sqrt(0.5), std::sqrt(0.5));
    CHECK(concurrence_d4(max) == doctest::Approx(1.0));
    for (double x : mbody_spectrum(max, 1)) CHECK(x == doctest::Approx(0.5));

    const PureState p8 = build(std::sqrt(0.8), std::sqrt(0.2));
    CHECK(concurrence_d4(p8) == doctest::Approx(0.8));
    CHECK(concurrence_eigenvalues(0.8).first == doctest::Approx(0.8));

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = random_gaussian(4, 4, rng);
        const PureState psi = make_two_fermion(a - a.transpose());
        const double C = concurrence_d4(psi);
        const auto [lp, lm] = concurrence_eigenvalues(C);
        const auto s = mbody_spectrum(psi, 1);
        CHECK(std::abs(s[0] - lp) < 1e-10);
        CHECK(std::abs(s[2] - lm) < 1e-10);
        CHECK(std::abs(C - 2.0 * std::sqrt(lp * lm)) < 1e-10);
    }
    CHECK_THROWS_AS((void)concurrence_d4(make_random(5, 2, 1)), std::invalid_argument);
    CHECK_THROWS_AS((void)concurrence_d4(make_random(4, 3, 1)), std::invalid_argument);
}

TEST_CASE("decomposition bounds") {
    const PureState a = make_ghz(8);
    const std::vector<int> occ{0, 1, 2, 3};
    const PureState b = make_slater(8, occ);
    const std::vector<std::pair<double, PureState>> dec{{1.0, a}, {3.0, b}};
    const double expected = 0.25 * normalized_entropy(a, 2, von_neumann()) + 0.75 * std::log2(6.0);
    CHECK(formation_upper_bound(dec, 2, von_neumann()) == doctest::Approx(expected));
    CHECK_THROWS_AS((void)formation_upper_bound({}, 2, von_neumann()), std::invalid_argument);
}

TEST_CASE("three-body incomparability needs a top eigenvalue above one") {
    const std::vector<int> occ8{0, 1, 2, 3, 4, 5, 6, 7};
    const std::vector<int> occ6{0, 1, 2, 3, 4, 5};
    const Spectrum k4 = spectrum_of(make_pair_condensate(12, 4), 3);
    const Spectrum k3 = spectrum_of(make_pair_condensate(12, 3), 3);
    CHECK(k4.max() > 1.0);
    CHECK(majorize_compare(k4, spectrum_of(make_slater(12, occ8), 3)).verdict == Verdict::Incomparable);
    CHECK(k3.max() < 1.0);
    CHECK(majorize_compare(k3, spectrum_of(make_slater(12, occ6), 3)).verdict == Verdict::FirstMoreMixed);
}
