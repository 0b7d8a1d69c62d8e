// SPDX-License-Identifier: MIT
//
// Weight families, class validation, growth comparison and Young-adapted weights.

#include "common.hpp"

#include <random>

using namespace pluri;
using Catch::Approx;
using testing::error_kind;

TEST_CASE("power weights match the closed form", "[weights]") {
    for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const auto w = make_power(p);
        for (double t : {-0.1, -1.0, -7.5, -1e3}) {
            CHECK(w(t) == Approx(-std::pow(-t, p)).epsilon(1e-14));
            const double h = 1e-6 * std::abs(t);
            CHECK(w.derivative(t) == Approx((w(t + h) - w(t - h)) / (2 * h)).epsilon(1e-6));
        }
        CHECK(w(0.0) == 0.0);
        CHECK(w.kind() == (p <= 1.0 ? WeightKind::ConvexLow : WeightKind::ConcaveHigh));
    }
}

TEST_CASE("iterated log weights compose -log(1 - t)", "[weights]") {
    const auto w2 = make_log_iterated(2);
    for (double t : {-0.5, -3.0, -100.0}) {
        CHECK(w2(t) == Approx(-std::log(1.0 + std::log(1.0 - t))).epsilon(1e-14));
        const double h = 1e-6 * std::abs(t);
        CHECK(w2.derivative(t) == Approx((w2(t + h) - w2(t - h)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("quasi-homogeneous weight and its growth constant", "[weights]") {
    const auto w = make_quasi_homog(1.0, 0.5);
    const double t = -20.0;
    CHECK(w(t) == Approx(-20.0 * std::sqrt(std::log(std::numbers::e + 20.0))).epsilon(1e-14));

    // sup_s s / ((e + s) log(e + s)) by brute force on a fine log grid
    double best = 0.0;
    for (double x = -6.0; x <= 9.0; x += 1e-4) {
        const double s = std::pow(10.0, x);
        best = std::max(best, s / ((std::numbers::e + s) * std::log(std::numbers::e + s)));
    }
    CHECK(detail::qh_growth_excess() == Approx(best).epsilon(1e-7));
    REQUIRE(w.growth_constant());
    CHECK(*w.growth_constant() == Approx(1.0 + 0.5 * best).epsilon(1e-7));
    // |t chi'(t)| <= M |chi(t)| on a dense sweep
    for (double s = 1e-3; s < 1e8; s *= 1.1)
        CHECK(s * w.derivative(-s) <= *w.growth_constant() * std::abs(w(-s)) * (1 + 1e-12));
}

TEST_CASE("built-in weights pass their class checks", "[weights]") {
    for (const char* spec : {"power:p=0.5", "power:p=1", "logiter:m=1", "logiter:m=3", "power:p=2", "qh:p=1,a=0.5",
                             "qh:p=2,a=1"}) {
        const auto rep = validate(parse_weight(spec));
        INFO(spec);
        for (const auto& c : rep.checks) {
            INFO(c.name << " slack " << c.worst_slack << " at t=" << c.witness_t);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("class checks reject the wrong shape", "[weights]") {
    const auto concave = validate_as(make_power(2.0), WeightKind::ConvexLow);
    CHECK_FALSE(concave.ok());
    REQUIRE(concave.find("convexity"));
    CHECK_FALSE(concave.find("convexity")->pass);

    const auto convex = validate_as(make_power(0.5), WeightKind::ConcaveHigh, 2.0);
    CHECK_FALSE(convex.find("concavity")->pass);

    // the growth constant of power(3) is 3; claiming 2 must fail the derivative bound
    const auto tight = validate_as(make_power(3.0), WeightKind::ConcaveHigh, 2.0);
    CHECK_FALSE(tight.find("derivative-bound")->pass);

    // chi'(2t) <= M chi'(t) fails for power(3): the ratio is 4 against M = 3
    const auto p3 = make_power(3.0);
    CHECK(p3.derivative(-10.0) / p3.derivative(-5.0) == Approx(4.0));
    CHECK(validate(p3).find("derivative-doubling")->pass);

    Weight bounded("bounded", {}, WeightKind::ConvexLow, [](double t) { return -1.0 + std::exp(std::min(t, 0.0)); },
                   [](double t) { return std::exp(std::min(t, 0.0)); });
    CHECK_FALSE(validate(bounded).find("monotone-unbounded")->pass);
}

TEST_CASE("growth comparison", "[weights]") {
    CHECK(growth_dominates(make_power(0.5), make_power(1.0)) == Growth::LittleO);
    CHECK(growth_dominates(make_log_iterated(1), make_power(0.5)) == Growth::LittleO);
    CHECK(growth_dominates(make_power(1.0), make_power(0.5)) == Growth::Neither);
    CHECK(growth_dominates(make_power(1.0), make_power(1.0)) == Growth::BigO);
}

TEST_CASE("piecewise linear gamma and its conjugate", "[weights]") {
    const PiecewiseLinearConvex g({0.0, 1.0, 3.0}, {0.0, 1.0, 2.0});
    CHECK(g(0.5) == 0.0);
    CHECK(g(2.0) == Approx(1.0));
    CHECK(g(4.0) == Approx(4.0));
    // brute-force sup_y (z y - gamma(y)) over y in [0, 3]; beyond the last knot the
    // true conjugate is infinite, so z stays below the last slope
    for (double z : {0.0, 0.3, 1.0, 1.5, 1.99}) {
        double best = 0.0;
        for (double y = 0.0; y <= 3.0; y += 1e-4)
            best = std::max(best, z * y - g(y));
        CHECK(g.conjugate(z) == Approx(best).margin(1e-3));
        if (g.conjugate(z) > 0.0)
            CHECK(g.conjugate_inverse(g.conjugate(z)) == Approx(z).epsilon(1e-12));
    }
    CHECK(error_kind([] { PiecewiseLinearConvex({0.0, 1.0}, {1.0, 0.5}); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("adapted gamma integrates the density and the weight satisfies Young", "[weights][young]") {
    std::mt19937_64 rng(7);
    std::exponential_distribution<double> E(0.2);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> f(3000), base(3000);
    double mass = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = std::exp(E(rng)); // heavy tail
        base[i] = U(rng);
        mass += base[i];
    }
    for (double& b : base)
        b /= mass;
    double integral = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        integral += f[i] * base[i];

    const auto gamma = adapted_gamma(f, base);
    double lhs = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        lhs += (*gamma)(f[i]) * base[i];
    CHECK(lhs <= integral * (1 + 1e-12));
    // superlinear: gamma(y) / y keeps growing
    CHECK((*gamma)(1e30) / 1e30 > (*gamma)(1e15) / 1e15 + 20.0);

    const auto w = young_adapted_weight(f, base);
    CHECK(validate(w).find("convexity")->pass);
    for (int k = 0; k < 2000; ++k) {
        const double s = std::pow(10.0, 8.0 * U(rng) - 2.0);
        const double y = std::pow(10.0, 8.0 * U(rng) - 2.0);
        CHECK(young_slack(w, s, y) >= -1e-9 * (s + y));
    }
    // f * base integrable with a growing chi: the adapted weight is o(t)
    CHECK(std::abs(w(-1e12)) / 1e12 < 1e-3);
}

TEST_CASE("adapted gamma handles degenerate data", "[weights][young]") {
    const std::vector<double> zero(5, 0.0), ones(5, 1.0);
    const auto g = adapted_gamma(zero, ones);
    CHECK(g->knots().size() >= 2);
    const std::vector<double> flat(4, 2.0), w(4, 0.25);
    const auto g2 = adapted_gamma(flat, w);
    CHECK((*g2)(2.0) * 1.0 <= 2.0 + 1e-12);
    CHECK(error_kind([&] { adapted_gamma(std::vector<double>{-1.0}, std::vector<double>{1.0}); }) ==
          ErrorKind::InvalidInput);
}

TEST_CASE("weight labels round-trip through the parser", "[weights][io]") {
    for (const char* spec : {"power:p=0.5", "logiter:m=2", "qh:p=1,a=0.5"}) {
        const auto w = parse_weight(spec);
        const auto again = parse_weight(w.label());
        CHECK(again.label() == w.label());
        CHECK(again(-3.0) == w(-3.0));
    }
    CHECK(error_kind([] { parse_weight("power"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { parse_weight("power:p=abc"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { parse_weight("gauss:p=1"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { parse_weight("logiter:m=1.5"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { make_power(-1.0); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { make_quasi_homog(0.5, 1.0); }) == ErrorKind::InvalidParameter);
}
