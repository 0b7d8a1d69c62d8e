// SPDX-License-Identifier: MIT
//
// Weighted energies, cut-energy sequences, Dirichlet energy and the fundamental inequality.

#include "common.hpp"

#include <random>

using namespace pluri;
using Catch::Approx;
using testing::error_kind;

namespace {

const LineGrid kGrid{-60.0, 60.0, 24000};

} // namespace

TEST_CASE("energy of the reference profile vanishes", "[energy]") {
    const auto p = RadialProfile::reference(kGrid);
    for (const char* s : {"power:p=0.5", "power:p=2", "logiter:m=1"})
        CHECK(energy(p, parse_weight(s)) == Approx(0.0).margin(1e-14));
}

TEST_CASE("cut of the Green profile carries all its mass at level -j", "[energy]") {
    // max(log|z| - g, -j): the smooth part sits where phi = -j, the kink where the
    // branches meet, so E_chi = |chi(-j)| up to one cell
    const auto green = RadialProfile::green(kGrid);
    for (double j : {1.0, 3.0, 8.0}) {
        const auto cut = canonical_cut(green, j);
        for (double p : {0.5, 1.0, 2.0}) {
            const auto w = make_power(p);
            const double expected = std::pow(j, p);
            CHECK(energy(cut, w) == Approx(expected).epsilon(p * kGrid.step() / j + 1e-12));
        }
    }
}

TEST_CASE("shifts do not change the normalised energy", "[energy]") {
    std::mt19937_64 rng(5);
    const auto p = random_profile(kGrid, rng);
    const auto w = make_power(0.5);
    CHECK(energy(p.shifted(2.5), w) == Approx(energy(p, w)).epsilon(1e-12));
    CHECK(grid_energy(p, w) == Approx(raw_energy(normalized(p), w)).epsilon(1e-15));
    CHECK(error_kind([&] { raw_energy(normalized(p).shifted(1.0), w); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("positive Lelong numbers give infinite energy", "[energy]") {
    std::mt19937_64 rng(9);
    RandomProfileOptions o;
    o.lelong_inf = 0.2;
    const auto p = random_profile(kGrid, rng, o);
    CHECK(energy(p, make_power(0.5)) == kInf);
    CHECK(energy(RadialProfile::green(kGrid), make_log_iterated(1)) == kInf);
    CHECK(gradient_energy(p) == kInf);
}

TEST_CASE("cut sequences of a Lelong profile diverge", "[energy][cuts]") {
    // nu |chi(-j)| grows without bound
    const auto green = RadialProfile::green(kGrid);
    const auto seq = cut_energy_sequence(green.with_unbounded_tails(true, false), make_power(1.0));
    REQUIRE(seq.steps.size() >= 10);
    CHECK(seq.verdict == SequenceVerdict::Diverged);
    for (std::size_t i = 1; i < seq.steps.size(); ++i)
        CHECK(seq.steps[i].energy > seq.steps[i - 1].energy);
}

TEST_CASE("cut sequence classification", "[energy][cuts]") {
    auto make = [](auto f) {
        std::vector<CutStep> s;
        for (int i = 1; i <= 20; ++i) {
            CutStep c;
            c.j = i;
            c.energy = f(i);
            c.escaping_term = 1.0 + i;
            s.push_back(c);
        }
        return s;
    };
    CHECK(classify_cut_sequence(make([](int) { return 2.0; })) == SequenceVerdict::Converged);
    CHECK(classify_cut_sequence(make([](int i) { return std::sqrt(i); })) == SequenceVerdict::Diverged);
    CHECK(classify_cut_sequence(make([](int i) { return i % 2 ? 1.0 : 2.0; })) == SequenceVerdict::Undetermined);
    CHECK(classify_cut_sequence(make([](int i) { return i == 3 ? 1e13 : 1.0; })) == SequenceVerdict::Diverged);
    CHECK(classify_cut_sequence({}) == SequenceVerdict::Undetermined);
}

TEST_CASE("Dirichlet energy against quadrature", "[energy][gradient]") {
    CHECK(gradient_energy(RadialProfile::reference(kGrid)) == Approx(0.0).margin(1e-12));
    // cut of the Green profile at level j: phi' = 0 below t*, 1 - g' = 1/(1 + e^{2t}) above
    const auto green = RadialProfile::green(kGrid);
    for (double j : {0.5, 2.0}) {
        const double ts = -0.5 * std::log(std::expm1(2.0 * j));
        const double exact = testing::simpson([](double t) { return std::pow(1.0 / (1.0 + std::exp(2.0 * t)), 2); }, ts,
                                              60.0, 200000);
        CHECK(gradient_energy(canonical_cut(green, j)) == Approx(exact).epsilon(2e-3));
    }
}

TEST_CASE("Dirichlet tail integral of g", "[energy][gradient]") {
    for (double t0 : {-8.0, -1.0, 0.0, 2.0}) {
        const double exact =
            testing::simpson([](double t) { return fs_slope(t) * fs_slope(t); }, -60.0, t0, 400000);
        CHECK(detail::fs_tail_gradient(std::exp(2.0 * t0)) == Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("fundamental inequality on nested cuts", "[energy][fundamental]") {
    std::mt19937_64 rng(21);
    const auto b0 = normalized(random_profile(kGrid, rng));
    // phi_a = phi_b - 1 is below phi_b
    const auto a = b0.shifted(-1.0);
    for (const char* s : {"power:p=0.5", "logiter:m=1", "power:p=2", "qh:p=1,a=0.5"}) {
        const auto w = parse_weight(s);
        const auto r = fundamental_inequality_check(a, b0, w);
        INFO(s);
        CHECK(r.ok);
        CHECK(r.lhs <= r.rhs);
        CHECK(r.constant == (w.kind() == WeightKind::ConvexLow ? 2.0 : *w.growth_constant() + 1.0));
    }
    CHECK(error_kind([&] { fundamental_inequality_check(b0, a, make_power(1.0)); }) ==
          ErrorKind::PreconditionViolation);
    CHECK(fundamental_constant(make_power(3.0)) == 4.0);
}
