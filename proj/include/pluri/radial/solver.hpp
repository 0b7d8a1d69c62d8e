// SPDX-License-Identifier: MIT
//
// Inverse problem MA(phi) = mu for S^1-invariant targets on P^1.
#pragma once

#include "pluri/measures.hpp"
#include "pluri/radial/profile.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace pluri {

/// psi' on [t_k, t_{k+1}] is the target CDF at t_k, psi is its running integral,
/// and phi is normalised to sup phi = 0.  The profile lives on mu.grid.primal(),
/// so ma_measure of the result is carried by mu's own cells.
inline RadialProfile solve(const LineMeasure& mu) {
    mu.validate();
    require(mu.charge_neg_inf == 0.0 && mu.charge_pos_inf == 0.0, ErrorKind::Unsolvable,
            "target charges a pluripolar set");
    const double total = mu.total();
    require(std::abs(total - 1.0) <= 1e-10, ErrorKind::NormalizationError, "target mass differs from 1");
    const LineGrid G = mu.grid.primal();
    const double h = G.step();
    const auto cum = mu.cumulative();
    std::vector<double> psi(G.nodes());
    CompensatedSum acc;
    psi[0] = 0.0;
    for (std::size_t k = 0; k + 1 < psi.size(); ++k) {
        acc += h * std::min(cum[k], 1.0);
        psi[k + 1] = acc.value();
    }
    auto p = unchecked_profile(G, std::move(psi), 0.0, 1.0);
    return normalized(p);
}

/// Moves each atom to the cell of `target` containing its location.
inline LineMeasure rebin(const LineMeasure& m, const LineGrid& target) {
    std::vector<double> atoms(target.n, 0.0);
    double neg = m.charge_neg_inf;
    double pos = m.charge_pos_inf;
    const double h = target.step();
    for (std::size_t k = 0; k < m.atoms.size(); ++k) {
        if (m.atoms[k] == 0.0)
            continue;
        const double x = m.grid.midpoint(k);
        const double pos_in = (x - target.tmin) / h;
        const auto idx = static_cast<std::ptrdiff_t>(std::floor(pos_in));
        const auto clamped = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(target.n) - 1);
        atoms[static_cast<std::size_t>(clamped)] += m.atoms[k];
    }
    return LineMeasure{target, std::move(atoms), neg, pos};
}

/// phi of a profile at an arbitrary t, by linear interpolation of psi (affine
/// continuation outside the grid).
inline double phi_at(const RadialProfile& p, double t) {
    const auto& G = p.grid();
    double psi;
    if (t <= G.tmin) {
        psi = p.psi().front() + p.slope_neg() * (t - G.tmin);
    } else if (t >= G.tmax) {
        psi = p.psi().back() + p.slope_pos() * (t - G.tmax);
    } else {
        const double x = (t - G.tmin) / G.step();
        const auto k = std::min(static_cast<std::size_t>(x), G.n - 1);
        const double lam = x - static_cast<double>(k);
        psi = (1.0 - lam) * p.psi(k) + lam * p.psi(k + 1);
    }
    return psi - fs_potential(t);
}

struct UniquenessReport {
    double deviation = 0.0; ///< max sup-deviation of mean-aligned solutions
    double tolerance = 0.0; ///< 4 * cell width * Lipschitz bound (|phi'| <= 1)
    bool ok = true;
};

/// Solves mu re-binned onto randomly offset and refined grids and compares the
/// solutions after removing their means on common sample points.
inline UniquenessReport uniqueness_check(const LineMeasure& mu, int trials, std::uint64_t seed = 1) {
    require(trials >= 1, ErrorKind::InvalidParameter, "uniqueness check needs at least one trial");
    const auto base = solve(mu);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const auto& G = mu.grid;
    // samples well inside every trial grid
    std::vector<double> ts;
    const double lo = G.tmin + 2.0 * G.step();
    const double hi = G.tmax - 2.0 * G.step();
    for (int i = 0; i <= 400; ++i)
        ts.push_back(lo + (hi - lo) * i / 400.0);
    auto centred = [&](const RadialProfile& p) {
        std::vector<double> v;
        double mean = 0.0;
        for (double t : ts) {
            v.push_back(phi_at(p, t));
            mean += v.back();
        }
        mean /= static_cast<double>(v.size());
        for (double& x : v)
            x -= mean;
        return v;
    };
    const auto ref = centred(base);
    UniquenessReport r;
    double width = G.step();
    for (int k = 0; k < trials; ++k) {
        const std::size_t refine = 1 + static_cast<std::size_t>(k % 3);
        const double h = G.step() / static_cast<double>(refine);
        const double off = (U(rng) - 0.5) * h;
        LineGrid T{G.tmin + off, G.tmax + off, G.n * refine};
        width = std::max(width, h);
        const auto sol = solve(rebin(mu, T));
        const auto v = centred(sol);
        for (std::size_t i = 0; i < v.size(); ++i)
            r.deviation = std::max(r.deviation, std::abs(v[i] - ref[i]));
    }
    r.tolerance = 4.0 * width * 1.0;
    r.ok = r.deviation <= r.tolerance;
    return r;
}

} // namespace pluri
