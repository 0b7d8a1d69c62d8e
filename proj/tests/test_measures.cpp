// SPDX-License-Identifier: MIT
//
// Grids, numerical helpers and line/planar measures.

#include "common.hpp"

#include <random>

using namespace pluri;
using Catch::Approx;
using testing::error_kind;

TEST_CASE("line grid nodes, midpoints and duality", "[grid]") {
    const LineGrid G{-2.0, 3.0, 10};
    CHECK(G.step() == Approx(0.5));
    CHECK(G.node(0) == -2.0);
    CHECK(G.node(10) == 3.0);
    CHECK(G.midpoint(0) == Approx(-1.75));
    const auto D = G.dual();
    CHECK(D.n == 11);
    for (std::size_t k = 0; k <= G.n; ++k)
        CHECK(D.midpoint(k) == Approx(G.node(k)).margin(1e-14));
    CHECK(D.primal() == G);
    CHECK(error_kind([] { LineGrid{1.0, 1.0, 4}.validate(); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { LineGrid{0.0, 1.0, 0}.validate(); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("box grid coordinates and axis cells", "[grid]") {
    const BoxGrid B{4.0, 9};
    CHECK(B.step() == Approx(1.0));
    CHECK(B.coord(0) == -4.0);
    CHECK(B.coord(4) == Approx(0.0).margin(1e-15));
    CHECK(B.coord(8) == 4.0);
    CHECK(B.index(2, 3) == 21);
    const auto L = B.axis_cells();
    for (std::size_t i = 0; i < B.n; ++i)
        CHECK(L.midpoint(i) == Approx(B.coord(i)).margin(1e-14));
}

TEST_CASE("compensated summation", "[numeric]") {
    const std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    CHECK(accurate_sum(xs) == 2.0);
    std::vector<double> many(1000000, 0.1);
    CHECK(accurate_sum(many) == Approx(100000.0).epsilon(1e-15));
}

TEST_CASE("log-sum-exp and the Fubini-Study potentials", "[numeric]") {
    CHECK(log_add_exp(1000.0, 1000.0) == Approx(1000.0 + std::log(2.0)));
    CHECK(log_add_exp(-kInf, 3.0) == 3.0);
    const std::vector<double> v{0.0, std::log(2.0), std::log(3.0)};
    CHECK(log_sum_exp(v) == Approx(std::log(6.0)));
    for (double t : {-30.0, -2.0, 0.0, 0.7, 25.0}) {
        CHECK(fs_potential(t) == Approx(0.5 * std::log1p(std::exp(2.0 * t))).epsilon(1e-14));
        const double h = 1e-6;
        CHECK(fs_slope(t) == Approx((fs_potential(t + h) - fs_potential(t - h)) / (2 * h)).margin(1e-9));
    }
    CHECK(fs_potential(-800.0) == 0.0);
    CHECK(fs_potential(800.0) == 800.0);
    for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, -2.0}, {-3.0, 0.5}})
        CHECK(fs_potential2(x, y) == Approx(0.5 * std::log(1 + std::exp(2 * x) + std::exp(2 * y))).epsilon(1e-14));
    CHECK(fs_potential2(500.0, 10.0) == Approx(500.0));
}

TEST_CASE("derived seeds are stable and name dependent", "[numeric]") {
    CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
    CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
    CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
    const auto g = geomspace(1.0, 1000.0, 4);
    CHECK(g[1] == Approx(10.0));
    CHECK(g[3] == 1000.0);
}

TEST_CASE("line measures validate their atoms", "[measures]") {
    const LineGrid G{0.0, 1.0, 4};
    CHECK(error_kind([&] { LineMeasure::make(G, {0.1, -0.1, 0.5, 0.5}); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([&] { LineMeasure::make(G, {0.1, 0.5}); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([&] { LineMeasure::make(G, {0.25, 0.25, 0.25, 0.25}, -1.0); }) == ErrorKind::InvalidInput);
    const auto m = LineMeasure::make(G, {0.1, 0.2, 0.3, 0.1}, 0.2, 0.1);
    CHECK(m.total() == Approx(1.0));
    CHECK(m.interior_mass() == Approx(0.7));
    CHECK_FALSE(m.non_pluripolar());
    CHECK(m.max_atom() == 0.3);
    const auto cum = m.cumulative();
    CHECK(cum.front() == Approx(0.3));
    CHECK(cum.back() == Approx(0.9));
}

TEST_CASE("cdf counts the atoms at midpoints up to t", "[measures]") {
    const LineGrid G{0.0, 4.0, 4}; // midpoints 0.5, 1.5, 2.5, 3.5
    const auto m = LineMeasure::make(G, {0.1, 0.2, 0.3, 0.4}, 0.05);
    CHECK(cdf(m, 0.0) == Approx(0.05));
    CHECK(cdf(m, 0.5) == Approx(0.15));
    CHECK(cdf(m, 1.49) == Approx(0.15));
    CHECK(cdf(m, 1.5) == Approx(0.35));
    CHECK(cdf(m, 4.0) == Approx(1.05));
    CHECK(error_kind([&] { cdf(m, 5.0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("Kolmogorov distance against a direct scan", "[measures]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const LineGrid G{-5.0, 5.0, 50};
    std::vector<double> a(50), b(50);
    for (std::size_t k = 0; k < 50; ++k) {
        a[k] = U(rng);
        b[k] = U(rng);
    }
    const auto ma = LineMeasure::make(G, a, 0.3, 0.0);
    const auto mb = LineMeasure::make(G, b, 0.0, 0.7);
    double best = 0.0;
    for (double t = G.tmin; t <= G.tmax; t += 0.01)
        best = std::max(best, std::abs(cdf(ma, t) - cdf(mb, t)));
    best = std::max(best, std::abs(ma.total() - mb.total()));
    CHECK(kolmogorov_distance(ma, mb) == Approx(best).epsilon(1e-12));
    CHECK(kolmogorov_distance(mb, ma) == Approx(best).epsilon(1e-12));
    CHECK(kolmogorov_distance(ma, ma) == 0.0);
    CHECK(error_kind([&] { kolmogorov_distance(ma, LineMeasure::make(G.dual(), std::vector<double>(51, 0.0))); }) ==
          ErrorKind::InvalidInput);
}

TEST_CASE("discretised logistic CDF", "[measures]") {
    const LineGrid G{-20.0, 20.0, 4000};
    const auto m = LineMeasure::from_cdf(G, fs_slope);
    CHECK(m.total() == Approx(1.0).margin(1e-15));
    // the step CDF can be off by at most one atom
    const double d = cdf_distance_to(m, fs_slope);
    CHECK(d <= m.max_atom() + 1e-15);
    CHECK(d >= 0.4 * m.max_atom());
}

TEST_CASE("truncated densities keep their mass", "[measures]") {
    const LineGrid G{0.0, 1.0, 5};
    const auto base = LineMeasure::make(G, {0.2, 0.2, 0.2, 0.2, 0.2});
    const std::vector<double> f{0.5, 1.0, 1.0, 1.5, 1.0};
    const auto fm = with_density(base, f);
    CHECK(fm.total() == Approx(1.0));
    const auto s = scale_min_density(base, f, 1.2);
    // capped masses 0.1 0.2 0.2 0.24 0.2 = 0.94
    CHECK(s.c == Approx(1.0 / 0.94));
    CHECK(s.measure.total() == Approx(1.0));
    CHECK(s.measure.atoms[3] == Approx(0.24 / 0.94));
    CHECK(scale_min_density(base, f, 10.0).c == Approx(1.0));
    CHECK(error_kind([&] { scale_min_density(base, std::vector<double>(5, 0.0), 1.0); }) ==
          ErrorKind::DegenerateTruncation);
    CHECK(error_kind([&] { scale_min_density(base, f, 0.0); }) == ErrorKind::InvalidParameter);
    const auto charged = LineMeasure::make(G, {0.2, 0.2, 0.2, 0.2, 0.1}, 0.1);
    CHECK(error_kind([&] { scale_min_density(charged, f, 1.0); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("planar measures", "[measures]") {
    PlanarMeasure m{BoxGrid{1.0, 3}, {0.0, 0.1, 0.0, 0.2, 0.4, 0.1, 0.0, 0.2, 0.0}};
    CHECK(m.total_norm() == Approx(1.0));
    CHECK(m.max_mass() == 0.4);
    CHECK(m.at(1, 1) == 0.4);
    CHECK(m.at(2, 1) == 0.2);
}
