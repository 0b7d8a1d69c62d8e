// SPDX-License-Identifier: MIT
//
// Monge-Ampere capacity of sublevel sets in the radial model.
#pragma once

#include "pluri/radial/energy.hpp"
#include "pluri/radial/profile.hpp"
#include "pluri/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace pluri {

/// Largest convex function with slopes in [0, 1] lying below the points (t_k, o_k),
/// evaluated at the nodes.  Lower hull by monotone chain, then the parts of the
/// hull with slope < 0 (left) or > 1 (right) are replaced by the clamped rays.
inline std::vector<double> clamped_lower_envelope(const LineGrid& G, const std::vector<double>& o) {
    const std::size_t n = o.size();
    std::vector<std::size_t> hull;
    auto cross = [&](std::size_t a, std::size_t b, std::size_t c) {
        const double ta = G.node(a), tb = G.node(b), tc = G.node(c);
        return (tb - ta) * (o[c] - o[a]) - (o[b] - o[a]) * (tc - ta);
    };
    for (std::size_t k = 0; k < n; ++k) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), k) <= 0.0)
            hull.pop_back();
        hull.push_back(k);
    }
    auto hslope = [&](std::size_t i) { // slope between hull[i] and hull[i+1]
        return (o[hull[i + 1]] - o[hull[i]]) / (G.node(hull[i + 1]) - G.node(hull[i]));
    };
    std::size_t i0 = hull.size() - 1;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i)
        if (hslope(i) >= 0.0) {
            i0 = i;
            break;
        }
    std::size_t i1 = 0;
    for (std::size_t i = hull.size() - 1; i > 0; --i)
        if (hslope(i - 1) <= 1.0) {
            i1 = i;
            break;
        }
    i1 = std::max(i1, i0);
    std::vector<double> env(n);
    const std::size_t a = hull[i0];
    const std::size_t b = hull[i1];
    std::size_t seg = i0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k <= a) {
            env[k] = o[a];
        } else if (k >= b) {
            env[k] = o[b] + (G.node(k) - G.node(b));
        } else {
            while (hull[seg + 1] < k)
                ++seg;
            const std::size_t l = hull[seg], r = hull[seg + 1];
            const double lam = (G.node(k) - G.node(l)) / (G.node(r) - G.node(l));
            env[k] = o[l] + lam * (o[r] - o[l]);
        }
    }
    return env;
}

struct CapacityResult {
    double capacity = 0.0;
    std::vector<char> set;      ///< node membership of E
    RadialProfile extremal;     ///< envelope profile psi*
    LineMeasure extremal_measure;
};

/// Cap of E = {phi < -s}: envelope psi* of the obstacle g - 1_E with slopes in
/// [0, 1]; the capacity is the MA mass of psi* carried by E.
inline CapacityResult capacity_of_set(const LineGrid& G, std::vector<char> set) {
    std::vector<double> obstacle(G.nodes());
    for (std::size_t k = 0; k < obstacle.size(); ++k)
        obstacle[k] = fs_potential(G.node(k)) - (set[k] ? 1.0 : 0.0);
    auto env = clamped_lower_envelope(G, obstacle);
    auto prof = unchecked_profile(G, std::move(env), 0.0, 1.0);
    auto m = ma_measure(prof);
    CompensatedSum s;
    for (std::size_t k = 0; k < m.atoms.size(); ++k)
        if (set[k])
            s += m.atoms[k];
    return {s.value(), std::move(set), std::move(prof), std::move(m)};
}

inline std::vector<char> sublevel_set(const RadialProfile& p, double s) {
    std::vector<char> e(p.grid().nodes());
    for (std::size_t k = 0; k < e.size(); ++k)
        e[k] = p.phi(k) < -s;
    return e;
}

inline double capacity_sublevel(const RadialProfile& p, double s) {
    require(s > 0.0, ErrorKind::InvalidParameter, "sublevel depth must be positive");
    auto e = sublevel_set(p, s);
    if (std::none_of(e.begin(), e.end(), [](char c) { return c != 0; }))
        return 0.0;
    return capacity_of_set(p.grid(), std::move(e)).capacity;
}

/// -g*(a) = -1/2 [a log a + (1 - a) log(1 - a)], the largest intercept b with a t + b <= g.
inline double fs_conjugate_neg(double a) {
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    return -0.5 * (xlogx(a) + xlogx(1.0 - a));
}

/// Admissible test profile psi_u = max(g - 1, a_i t + b_i) with b_i <= -g*(a_i),
/// so that -1 <= u <= 0.
inline RadialProfile random_test_function(const LineGrid& G, std::mt19937_64& rng, int pieces = 2) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::pair<double, double>> lines;
    for (int i = 0; i < pieces; ++i) {
        const double a = U(rng);
        lines.emplace_back(a, fs_conjugate_neg(a) - 1.2 * U(rng));
    }
    std::vector<double> v(G.nodes());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double t = G.node(k);
        double x = fs_potential(t) - 1.0;
        for (const auto& [a, b] : lines)
            x = std::max(x, a * t + b);
        v[k] = x;
    }
    return unchecked_profile(G, std::move(v), 0.0, 1.0);
}

struct DominationSample {
    double test_mass = 0.0;
    double capacity = 0.0;
    double eps_grid = 0.0;
    double slack = 0.0; ///< capacity + eps_grid - test_mass
};

/// Compares the envelope capacity of E with the mass of sampled admissible test
/// functions on E.
inline std::vector<DominationSample> envelope_domination(const LineGrid& G, const std::vector<char>& set,
                                                         std::mt19937_64& rng, int samples) {
    const auto cap = capacity_of_set(G, set);
    std::vector<DominationSample> out;
    for (int i = 0; i < samples; ++i) {
        const auto u = random_test_function(G, rng, 1 + i % 3);
        const auto m = ma_measure(u);
        CompensatedSum s;
        for (std::size_t k = 0; k < m.atoms.size(); ++k)
            if (set[k])
                s += m.atoms[k];
        DominationSample d;
        d.test_mass = s.value();
        d.capacity = cap.capacity;
        d.eps_grid = 2.0 * std::max(m.max_atom(), cap.extremal_measure.max_atom());
        d.slack = d.capacity + d.eps_grid - d.test_mass;
        out.push_back(d);
    }
    return out;
}

struct DecayRow {
    double t = 0.0;
    double capacity = 0.0;
    double inverse_bound = 0.0; ///< |t chi(-t)|^-1
    double product = 0.0;       ///< capacity * |t chi(-t)|
};

struct DecayReport {
    std::vector<DecayRow> rows;
    double sup_product = 0.0;
    bool bounded = true;
};

/// Cap(phi < -t) |t chi(-t)| over the sweep, on the normalised profile.
inline DecayReport capacity_decay_check(const RadialProfile& p, const Weight& w, const std::vector<double>& ts) {
    const auto q = normalized(p);
    DecayReport r;
    for (double t : ts) {
        DecayRow row;
        row.t = t;
        row.capacity = capacity_sublevel(q, t);
        const double scale = std::abs(t * w(-t));
        row.inverse_bound = 1.0 / scale;
        row.product = row.capacity * scale;
        r.sup_product = std::max(r.sup_product, row.product);
        r.rows.push_back(row);
    }
    r.bounded = std::isfinite(r.sup_product);
    return r;
}

struct ConverseReport {
    double constant = 0.0; ///< smallest C with Cap <= C t^-(1+eps) |chi(-t)|^-1 on the sweep
    double energy = 0.0;
    bool hypothesis = false;
    bool energy_finite = false;
};

/// If Cap(phi < -t) <= C |t^{1+eps} chi(-t)|^-1 then E_chi(phi) < inf.
inline ConverseReport capacity_converse_check(const RadialProfile& p, const Weight& w, double eps,
                                              const std::vector<double>& ts) {
    const auto q = normalized(p);
    ConverseReport r;
    for (double t : ts) {
        const double cap = capacity_sublevel(q, t);
        r.constant = std::max(r.constant, cap * std::pow(t, 1.0 + eps) * std::abs(w(-t)));
    }
    r.hypothesis = std::isfinite(r.constant);
    r.energy = energy(p, w);
    r.energy_finite = std::isfinite(r.energy);
    return r;
}

} // namespace pluri
