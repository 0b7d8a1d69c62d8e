// SPDX-License-Identifier: MIT

#include "common.hpp"

#include <random>

using namespace pluri;
using Catch::Approx;
using testing::error_kind;

namespace {

// cell of vertex v clipped against every other vertex, no oracle
double brute_cell_area(const ToricProfile& p, std::size_t v) {
    const auto& G = p.grid();
    const double h = G.step();
    Polygon cell = Polygon::simplex();
    const std::size_t vi = v / G.n, vj = v % G.n;
    for (std::size_t w = 0; w < G.vertices(); ++w) {
        if (w == v)
            continue;
        const double di = static_cast<double>(w / G.n) - static_cast<double>(vi);
        const double dj = static_cast<double>(w % G.n) - static_cast<double>(vj);
        cell.clip(di, dj, (p.psi()[w] - p.psi()[v]) / h);
    }
    return cell.area() / 0.5;
}

} // namespace

TEST_CASE("polygon clipping", "[toric][polygon]") {
    auto s = Polygon::simplex();
    CHECK(s.area() == 0.5);
    CHECK(Polygon::simplex(2.0).area() == 2.0);
    s.clip(1.0, 0.0, 0.5); // x <= 1/2
    CHECK(s.area() == Approx(0.5 - 0.125).epsilon(1e-15));
    s.clip(0.0, 1.0, 0.25);
    CHECK(s.area() == Approx(0.125).epsilon(1e-15)); // the rectangle [0, 1/2] x [0, 1/4]
    s.clip(1.0, 1.0, -1.0);
    CHECK(s.empty());
}

TEST_CASE("reference measure has unit mass", "[toric][ma]") {
    const BoxGrid G{10.0, 41};
    const auto m = alexandrov_ma(ToricProfile::reference(G));
    CHECK(m.total_norm() == Approx(1.0).epsilon(1e-12));
    // psi = max(0, x, y) puts the whole simplex at the origin
    const auto corner = ToricProfile::from_psi(G, [](double x, double y) { return std::max({0.0, x, y}); });
    const auto mc = alexandrov_ma(corner);
    const std::size_t mid = G.index(20, 20);
    CHECK(mc.masses[mid] == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact cells agree with clipping against all vertices", "[toric][ma]") {
    const BoxGrid G{6.0, 13};
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 4; ++rep) {
        const auto p = random_toric_profile(G, rng);
        const auto m = alexandrov_ma(p);
        double worst = 0.0;
        for (std::size_t v = 0; v < G.vertices(); ++v)
            worst = std::max(worst, std::abs(m.masses[v] - brute_cell_area(p, v)));
        CHECK(worst <= 1e-12);
        CHECK(m.total_norm() == Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("mixed measures", "[toric][mixed]") {
    const BoxGrid G{8.0, 25};
    std::mt19937_64 rng(22);
    const auto a = random_toric_profile(G, rng);
    const auto b = random_toric_profile(G, rng);
    const auto mm = mixed_measures(a, b);
    CHECK(mm.sum.total_norm() == Approx(4.0).epsilon(1e-9));
    CHECK(mm.mixed.total_norm() == Approx(1.0).epsilon(1e-9));
    // MA(a, a) = MA(a)
    const auto self = mixed_ma(a, a);
    const auto ma = alexandrov_ma(a);
    for (std::size_t k = 0; k < ma.masses.size(); ++k)
        CHECK(self.masses[k] == Approx(ma.masses[k]).margin(1e-10));
    CHECK(error_kind([&] { mixed_ma(a, ToricProfile::reference(BoxGrid{8.0, 27})); }) == ErrorKind::GridMismatch);
}

TEST_CASE("mixed energy constant", "[toric][mixed]") {
    CHECK(mixed_energy_constant(1.0) == Approx(8.0 * 256.0 * 4.0 / 3.0).epsilon(1e-14));
    for (double p : {0.25, 0.5, 1.0}) {
        const double eps = 0.5 * std::pow(8.0, -1.0 / p);
        CHECK(mixed_energy_constant(p) == Approx(8.0 / (eps * eps * (1.0 - 4.0 * std::pow(eps, p)))).epsilon(1e-14));
    }
}

TEST_CASE("energy and inequalities on random profiles", "[toric][energy]") {
    const BoxGrid G{8.0, 25};
    std::mt19937_64 rng(23);
    const auto w = make_power(1.0);
    CHECK(energy2(ToricProfile::reference(G), w) == Approx(0.0).margin(1e-12));
    for (int rep = 0; rep < 3; ++rep) {
        const auto a = random_toric_profile(G, rng).normalized();
        const auto b = random_toric_profile(G, rng).normalized();
        CHECK(energy2(a, w) >= 0.0);
        CHECK(raw_energy2(a, w) == Approx(energy2(a, w)).epsilon(1e-12));
        CHECK(toric_comparison_check(a, b).ok);
        // a - 1 <= a <= 0
        const auto lower = a.shifted(-1.0);
        const auto f = toric_fundamental_check(lower, a, w);
        CHECK(f.ok);
        CHECK(f.constant == 4.0);
        CHECK(mixed_energy_bound_check({a, b, a}, 1.0).ok);
    }
    const auto a = random_toric_profile(G, rng).normalized();
    CHECK(error_kind([&] { toric_fundamental_check(a, a.shifted(-1.0), w); }) == ErrorKind::PreconditionViolation);
    CHECK(error_kind([&] { raw_energy2(a.shifted(1.0), w); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("separable solver reproduces its factors", "[toric][solver]") {
    const LineGrid L{-16.25, 16.25, 65};
    auto logistic = [](double c) { return [c](double t) { return 1.0 / (1.0 + std::exp(-2.0 * (t - c))); }; };
    const auto mu1 = LineMeasure::from_cdf(L, logistic(0.5));
    const auto mu2 = LineMeasure::from_cdf(L, logistic(-1.0));
    for (double a : {0.5, 0.3}) {
        const auto sol = solve_separable(mu1, mu2, a);
        CHECK(sol.max_vertex_error <= 1e-10);
        CHECK(sol.marginal_distance_1 <= sol.tolerance);
        CHECK(sol.marginal_distance_2 <= sol.tolerance);
        CHECK(sol.expected.total_norm() == Approx(1.0).epsilon(1e-9));
        CHECK(sol.profile.sup_phi() == Approx(0.0).margin(1e-12));
    }
    CHECK(error_kind([&] { solve_separable(mu1, mu2, 1.0); }) == ErrorKind::InvalidParameter);
    const LineGrid skew{-6.0, 8.0, 33};
    const auto s1 = LineMeasure::make(skew, std::vector<double>(33, 1.0 / 33.0));
    CHECK(error_kind([&] { solve_separable(s1, s1); }) == ErrorKind::InvalidInput);
}

TEST_CASE("validation rejects non-convex data and slopes outside the simplex", "[toric][validate]") {
    const BoxGrid G{4.0, 9};
    CHECK(error_kind([&] { ToricProfile::from_psi(G, [](double x, double y) { return -0.01 * x * x + 0.0 * y; }); }) ==
          ErrorKind::ModelViolation);
    CHECK(error_kind([&] { ToricProfile::from_psi(G, [](double x, double) { return std::max(0.0, 2.0 * x); }); }) ==
          ErrorKind::ModelViolation);
    CHECK(error_kind([&] { ToricProfile::from_psi(G, [](double x, double y) { return std::max({0.0, -x, y}); }); }) ==
          ErrorKind::ModelViolation);
    CHECK(error_kind([&] { ToricProfile::make(G, std::vector<double>(5, 0.0)); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([&] { ToricProfile::make(BoxGrid{4.0, 1}, {0.0}); }) == ErrorKind::InvalidParameter);
}
