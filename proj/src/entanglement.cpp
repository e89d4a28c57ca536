// Copyright 2026 The mbent Authors
// SPDX-License-Identifier: Apache-2.0

#include <mbent/entanglement.hpp>
#include <mbent/mbody.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mbent {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    for (double& x : values_) {
        if (std::isnan(x)) throw std::domain_error("spectrum contains NaN");
        if (x < -kClampTol)
            throw std::domain_error("spectrum entry " + std::to_string(x) + " is negative beyond tolerance");
        if (x < 0.0) x = 0.0;
    }
    std::sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::trace() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Spectrum Spectrum::padded(std::size_t n) const {
    Spectrum out = *this;
    if (out.values_.size() < n) out.values_.resize(n, 0.0);
    return out;
}

Spectrum Spectrum::scaled(double s) const {
    if (s < 0.0) throw std::invalid_argument("spectrum scale must be nonnegative");
    Spectrum out = *this;
    for (double& x : out.values_) x *= s;
    return out;
}

Spectrum Spectrum::normalized() const {
    const double t = trace();
    if (!(t > 0.0)) throw std::domain_error("cannot normalize a spectrum with zero trace");
    return scaled(1.0 / t);
}

std::vector<double> Spectrum::nonzero(double tol) const {
    std::vector<double> out;
    for (double x : values_)
        if (x > tol) out.push_back(x);
    return out;
}

std::vector<double> Spectrum::prefix_sums() const {
    std::vector<double> out(values_.size());
    std::partial_sum(values_.begin(), values_.end(), out.begin());
    return out;
}

Spectrum weighted_sum(std::span<const std::pair<double, Spectrum>> terms) {
    std::size_t n = 0;
    for (const auto& [w, s] : terms) n = std::max(n, s.size());
    std::vector<double> acc(n, 0.0);
    for (const auto& [w, s] : terms)
        for (std::size_t i = 0; i < s.size(); ++i) acc[i] += w * s[i];
    return Spectrum(std::move(acc));
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::FirstMoreMixed: return "FirstMoreMixed";
    case Verdict::SecondMoreMixed: return "SecondMoreMixed";
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::Incomparable: return "Incomparable";
    }
    return "Incomparable";
}

namespace {

std::optional<std::size_t> first_excess(const std::vector<double>& p, const std::vector<double>& q, double tol) {
    for (std::size_t k = 0; k < p.size(); ++k)
        if (p[k] > q[k] + tol) return k;
    return std::nullopt;
}

} // namespace

bool majorized_by(const Spectrum& a, const Spectrum& b, double tol) {
    const std::size_t n = std::max(a.size(), b.size());
    return !first_excess(a.padded(n).prefix_sums(), b.padded(n).prefix_sums(), tol);
}

MajorizationVerdict majorize_compare(const Spectrum& a, const Spectrum& b, double tol) {
    if (std::abs(a.trace() - b.trace()) > tol)
        throw std::invalid_argument("majorize_compare: traces differ (" + std::to_string(a.trace()) + " vs " +
                                    std::to_string(b.trace()) + "); normalize first");
    const std::size_t n = std::max(a.size(), b.size());
    MajorizationVerdict v;
    v.tol = tol;
    v.prefix_a = a.padded(n).prefix_sums();
    v.prefix_b = b.padded(n).prefix_sums();
    v.first_violation = first_excess(v.prefix_a, v.prefix_b, tol);
    v.second_violation = first_excess(v.prefix_b, v.prefix_a, tol);
    const bool a_below = !v.first_violation;
    const bool b_below = !v.second_violation;
    if (a_below && b_below) v.verdict = Verdict::Equivalent;
    else if (a_below) v.verdict = Verdict::FirstMoreMixed;
    else if (b_below) v.verdict = Verdict::SecondMoreMixed;
    else v.verdict = Verdict::Incomparable;
    return v;
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

EntropyFunctional von_neumann() {
    return {"von-neumann", [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }, "2"};
}

EntropyFunctional bosonic_like() {
    return {"bosonic",
            [](double x) { return x > 0.0 ? -x * std::log(x) + (1.0 + x) * std::log1p(x) : 0.0; }, "e"};
}

EntropyFunctional linear_entropy() {
    return {"linear", [](double x) { return x * (1.0 - x); }, "none"};
}

std::vector<EntropyFunctional> builtin_entropies() { return {von_neumann(), bosonic_like(), linear_entropy()}; }

EntropyFunctional entropy_functional(std::string_view name) {
    if (name == "von-neumann" || name == "vn" || name == "von_neumann") return von_neumann();
    if (name == "bosonic" || name == "bosonic-like") return bosonic_like();
    if (name == "linear") return linear_entropy();
    throw std::invalid_argument("unknown entropy functional '" + std::string(name) +
                                "' (expected von-neumann, bosonic or linear)");
}

bool is_concave_on_grid(const EntropyFunctional& f, double upper, int points) {
    if (std::abs(f.f(0.0)) > 1e-15) return false;
    const double h = upper / points;
    for (int i = 0; i + 2 <= points; ++i) {
        const double x = i * h;
        const double y = (i + 2) * h;
        if (f.f(0.5 * (x + y)) < 0.5 * (f.f(x) + f.f(y)) - 1e-12) return false;
    }
    return true;
}

double entropy(const Spectrum& s, const EntropyFunctional& f) {
    double acc = 0.0;
    for (double x : s.values()) acc += f.f(x);
    return acc;
}

double raw_entropy(const PureState& psi, int M, const EntropyFunctional& f) {
    return entropy(Spectrum(mbody_spectrum(psi, M)), f);
}

double normalized_entropy(const PureState& psi, int M, const EntropyFunctional& f) {
    const int N = psi.particles();
    if (M < 1 || M > N - 1)
        throw std::invalid_argument("normalized_entropy: M=" + std::to_string(M) + " outside [1, N-1]");
    const Spectrum s(mbody_spectrum(psi, M));
    return entropy(s.scaled(1.0 / static_cast<double>(binom(N, M))), f);
}

double concurrence_d4(const PureState& psi) {
    if (psi.modes() != 4 || psi.particles() != 2)
        throw std::invalid_argument("concurrence_d4 needs a two-fermion state in four modes");
    const auto g = [&](int i, int j) { return psi.amplitude((Mask{1} << i) | (Mask{1} << j)); };
    return 2.0 * std::abs(g(0, 1) * g(2, 3) - g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2));
}

std::pair<double, double> concurrence_eigenvalues(double C) {
    if (C < -1e-12 || C > 1.0 + 1e-12) throw std::domain_error("concurrence outside [0, 1]");
    const double r = std::sqrt(std::max(0.0, 1.0 - C * C));
    return {(1.0 + r) / 2.0, (1.0 - r) / 2.0};
}

double formation_upper_bound(std::span<const std::pair<double, PureState>> decomposition, int M,
                             const EntropyFunctional& f) {
    if (decomposition.empty()) throw std::invalid_argument("empty decomposition");
    double total = 0.0;
    for (const auto& [q, psi] : decomposition) {
        if (q < 0.0) throw std::invalid_argument("negative decomposition weight");
        total += q;
    }
    if (!(total > 0.0)) throw std::invalid_argument("decomposition weights sum to zero");
    double acc = 0.0;
    for (const auto& [q, psi] : decomposition)
        if (q > 0.0) acc += (q / total) * normalized_entropy(psi.normalized(), M, f);
    return acc;
}

} // namespace mbent
