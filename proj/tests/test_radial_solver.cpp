// SPDX-License-Identifier: MIT
//
// Inverse Monge-Ampere problem on radial targets.

#include "common.hpp"

#include <random>

using namespace pluri;
using Catch::Approx;
using testing::error_kind;

namespace {

const LineGrid kGrid{-40.0, 40.0, 8000};

double max_phi_gap(const RadialProfile& a, const RadialProfile& b) {
    const auto na = normalized(a), nb = normalized(b);
    double d = 0.0;
    for (std::size_t k = 0; k < a.grid().nodes(); ++k)
        d = std::max(d, std::abs(na.phi(k) - nb.phi(k)));
    return d;
}

} // namespace

TEST_CASE("solving the measure of a profile recovers it", "[solver]") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10; ++i) {
        const auto p = random_profile(kGrid, rng);
        const auto mu = ma_measure(p);
        const auto sol = solve(mu);
        REQUIRE(sol.grid() == kGrid);
        CHECK(sup_phi(sol).value == Approx(0.0).margin(1e-12));
        CHECK(max_phi_gap(sol, p) <= 1e-9);
        CHECK(kolmogorov_distance(ma_measure(sol), mu) <= 1e-12);
    }
}

TEST_CASE("logistic target gives the reference profile", "[solver]") {
    const auto mu = LineMeasure::from_cdf(kGrid.dual(), fs_slope);
    const auto sol = solve(LineMeasure::make(mu.grid, mu.atoms, 0.0, 0.0));
    // psi' is the CDF at the left node, so phi is off by at most one cell
    double worst = 0.0;
    for (std::size_t k = 0; k < kGrid.nodes(); ++k)
        worst = std::max(worst, std::abs(sol.phi(k)));
    CHECK(worst <= kGrid.step());
}

TEST_CASE("targets with atoms", "[solver]") {
    // half the mass at t = 0 and half spread as the logistic law
    const LineGrid cells = kGrid.dual();
    auto mu = LineMeasure::from_cdf(cells, fs_slope);
    for (double& a : mu.atoms)
        a *= 0.5;
    mu.atoms[cells.n / 2] += 0.5;
    const double t = mu.total();
    for (double& a : mu.atoms)
        a /= t;
    const auto sol = solve(mu);
    const auto m = ma_measure(sol);
    CHECK(m.atoms[cells.n / 2] == Approx(mu.atoms[cells.n / 2]).margin(1e-12));
    CHECK(kolmogorov_distance(m, mu) <= 1e-12);
}

TEST_CASE("the solver rejects invalid targets", "[solver]") {
    const LineGrid cells{-1.0, 1.0, 4};
    CHECK(error_kind([&] { solve(LineMeasure::make(cells, {0.25, 0.25, 0.25, 0.15}, 0.1)); }) == ErrorKind::Unsolvable);
    CHECK(error_kind([&] { solve(LineMeasure::make(cells, {0.25, 0.25, 0.25, 0.15}, 0.0, 0.1)); }) ==
          ErrorKind::Unsolvable);
    CHECK(error_kind([&] { solve(LineMeasure::make(cells, {0.25, 0.25, 0.25, 0.2})); }) ==
          ErrorKind::NormalizationError);
    CHECK(error_kind([&] { solve(LineMeasure{cells, {0.5, -0.5, 0.5, 0.5}}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("solutions agree across grids up to constants", "[solver]") {
    std::mt19937_64 rng(30);
    const LineGrid cells{-30.0, 30.0, 3000};
    const auto mu = ma_measure(random_profile(cells.primal(), rng));
    const auto rep = uniqueness_check(mu, 6, 99);
    CHECK(rep.ok);
    CHECK(rep.deviation <= rep.tolerance);
    CHECK(rep.tolerance == Approx(4.0 * cells.step()));
}

TEST_CASE("rebinning keeps the mass", "[solver]") {
    const LineGrid a{-5.0, 5.0, 100}, b{-5.3, 5.3, 37};
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> atoms(100);
    for (double& x : atoms)
        x = U(rng);
    const auto m = LineMeasure::make(a, atoms, 0.2, 0.1);
    const auto r = rebin(m, b);
    CHECK(r.total() == Approx(m.total()).epsilon(1e-14));
    // each atom lands in the cell containing its midpoint
    CHECK(cdf(r, 0.0) == Approx(cdf(m, 0.0)).margin(2 * m.max_atom() * (b.step() / a.step())));
}

TEST_CASE("phi_at interpolates and continues affinely", "[solver]") {
    const auto ref = RadialProfile::reference(kGrid);
    CHECK(phi_at(ref, 0.123) == Approx(0.0).margin(1e-5));
    const auto g = RadialProfile::green(kGrid);
    CHECK(phi_at(g, -100.0) == Approx(-100.0).margin(1e-12));
    CHECK(phi_at(g, 100.0) == Approx(0.0).margin(1e-12));
}
