// SPDX-License-Identifier: MIT
//
// Profiles built by composing with weights: attenuation of singularities, slowly
// singular profiles and logarithmic compositions.
#pragma once

#include "pluri/radial/profile.hpp"
#include "pluri/weights.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace pluri {

/// psi = g + chi(phi) for phi <= 0.  Asymptotic slopes follow from
/// d = lim chi(t)/t: s- -> d s-, 1 - s+ -> d (1 - s+).  Non-convex results raise
/// model-violation with the offending node.
inline RadialProfile compose_weight(const RadialProfile& p, const Weight& w) {
    const auto d = w.asymptotic_slope();
    require(d.has_value() && *d <= 1.0, ErrorKind::InvalidParameter,
            "composition needs a weight with known asymptotic slope <= 1");
    const auto& G = p.grid();
    std::vector<double> v(G.nodes());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double phi = p.phi(k);
        require(phi <= 1e-12, ErrorKind::PreconditionViolation, "composition needs phi <= 0");
        v[k] = fs_potential(G.node(k)) + w(std::min(phi, 0.0));
    }
    const double sn = *d * p.slope_neg();
    const double sp = 1.0 - *d * (1.0 - p.slope_pos());
    auto out = RadialProfile::make(G, std::move(v), sn, sp);
    return out.with_unbounded_tails(p.unbounded_neg() && sn == 0.0, p.unbounded_pos() && sp == 1.0);
}

/// phi -> -(-phi)^q for sup phi <= -1, 0 < q < 1.
inline RadialProfile attenuate(const RadialProfile& p, double q) {
    require(q > 0.0 && q < 1.0, ErrorKind::InvalidParameter, "attenuation exponent must lie in (0, 1)");
    require(sup_phi(p).value <= -1.0 + 1e-12, ErrorKind::PreconditionViolation, "attenuation needs sup phi <= -1");
    return compose_weight(p, make_power(q));
}

/// phi = log|z| - g - 1, the Green profile shifted below -1.
inline RadialProfile shifted_green(const LineGrid& G, double shift = 1.0) {
    return RadialProfile::green(G).shifted(-shift);
}

/// h(t) = t / log(e - t): convex, increasing, h(0) = 0, h' -> 0 so the
/// composed profile has no Lelong number but is unbounded.
inline Weight make_slow_log_weight() {
    auto value = [](double t) {
        t = std::min(t, 0.0);
        return t / std::log(std::numbers::e - t);
    };
    auto deriv = [](double t) {
        t = std::min(t, 0.0);
        const double l = std::log(std::numbers::e - t);
        return 1.0 / l + t / ((std::numbers::e - t) * l * l);
    };
    return Weight("slowlog", {}, WeightKind::ConvexLow, value, deriv).with_asymptotic_slope(0.0);
}

/// h(t) = t log(1 - t), the profile as literally displayed; it is concave and
/// its composition with the shifted Green profile is not omega-psh.
inline Weight make_literal_slow_weight() {
    auto value = [](double t) {
        t = std::min(t, 0.0);
        return t * std::log1p(-t);
    };
    auto deriv = [](double t) {
        t = std::min(t, 0.0);
        return std::log1p(-t) - t / (1.0 - t);
    };
    return Weight("literal", {}, WeightKind::ConvexLow, value, deriv).with_asymptotic_slope(0.0);
}

/// psi(t) = g(t) + h(t - g(t) - 1): an unbounded profile of full mass whose
/// energy is infinite for every power weight.
inline RadialProfile slow_singularity_profile(const LineGrid& G, const Weight& h) {
    return compose_weight(shifted_green(G), h);
}

/// -log(1 - phi) applied to the Green profile: an unbounded profile of full mass
/// whose sublevel sets have exponentially small capacity.
inline RadialProfile log_composed_green(const LineGrid& G) {
    return compose_weight(RadialProfile::green(G), make_log_iterated(1));
}

struct DensityRatioRow {
    double t = 0.0;       ///< log|z|
    double density = 0.0; ///< psi'' estimated from atoms averaged over a window
    double ratio = 0.0;   ///< psi'' (-2t) log(-2t)^2
};

/// psi''(t) (-log|z|^2) [log(-log|z|^2)]^2 over t in [lo, hi] (both negative),
/// with psi'' from the MA atoms averaged over `window` cells.
inline std::vector<DensityRatioRow> density_ratio_table(const RadialProfile& p, double lo, double hi, int rows,
                                                        std::size_t window = 200) {
    const auto m = ma_measure(p);
    const auto& G = p.grid();
    const double h = G.step();
    std::vector<DensityRatioRow> out;
    for (int i = 0; i < rows; ++i) {
        const double t = lo + (hi - lo) * i / std::max(1, rows - 1);
        const auto k = static_cast<std::size_t>(std::llround((t - G.tmin) / h));
        const std::size_t a = k > window / 2 ? k - window / 2 : 0;
        const std::size_t b = std::min(m.atoms.size(), a + window);
        CompensatedSum s;
        for (std::size_t j = a; j < b; ++j)
            s += m.atoms[j];
        DensityRatioRow r;
        r.t = t;
        r.density = s.value() / (static_cast<double>(b - a) * h);
        const double x = -2.0 * t;
        r.ratio = r.density * x * std::log(x) * std::log(x);
        out.push_back(r);
    }
    return out;
}

} // namespace pluri
