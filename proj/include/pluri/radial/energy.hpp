// SPDX-License-Identifier: MIT
//
// Weighted energies, canonical-cut energy sequences and the Dirichlet energy of
// radial profiles.
#pragma once

#include "pluri/radial/profile.hpp"
#include "pluri/weights.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pluri {

/// sum_k (-chi)(phi_k) atoms_k without renormalisation; needs phi <= 0 on the grid.
inline double raw_energy(const RadialProfile& p, const Weight& w) {
    const auto m = ma_measure(p);
    CompensatedSum s;
    for (std::size_t k = 0; k < m.atoms.size(); ++k) {
        const double phi = p.phi(k);
        require(phi <= 1e-12 * std::max(1.0, std::abs(p.psi(k))), ErrorKind::PreconditionViolation,
                "raw energy needs phi <= 0");
        if (m.atoms[k] != 0.0)
            s += -w(std::min(phi, 0.0)) * m.atoms[k];
    }
    return s.value();
}

/// Energy of the grid model after normalising sup phi = 0.
inline double grid_energy(const RadialProfile& p, const Weight& w) { return raw_energy(normalized(p), w); }

struct CutStep {
    double j = 0.0;
    double energy = 0.0;        ///< energy of max(phi, -j)
    double escaping_mass = 0.0; ///< cut mass outside {phi > -j}
    double escaping_term = 0.0; ///< |chi(-j)| * escaping_mass
};

enum class SequenceVerdict { Converged, Diverged, Undetermined };

inline const char* to_string(SequenceVerdict v) {
    switch (v) {
    case SequenceVerdict::Converged: return "converged";
    case SequenceVerdict::Diverged: return "diverged";
    case SequenceVerdict::Undetermined: return "undetermined";
    }
    return "?";
}

struct CutSequence {
    std::vector<CutStep> steps;
    SequenceVerdict verdict = SequenceVerdict::Undetermined;
};

/// Energy of max(phi, -j) for a profile with sup phi <= 0.  A Lelong charge whose
/// crossing with g - j falls beyond the grid is evaluated at level -j.
inline CutStep cut_energy(const RadialProfile& p, double j, const Weight& w) {
    const auto cut = canonical_cut(p, j);
    const auto m = ma_measure(cut);
    const auto inside = above_level_cells(p, j);
    const auto extra = beyond_grid_charge(p, j);
    CompensatedSum e;
    CompensatedSum esc;
    for (std::size_t k = 0; k < m.atoms.size(); ++k) {
        if (m.atoms[k] == 0.0)
            continue;
        e += -w(std::min(cut.phi(k), 0.0)) * m.atoms[k];
        if (!inside[k])
            esc += m.atoms[k];
    }
    const double at_level = -w(-j);
    const std::size_t last = m.atoms.size() - 1;
    if (extra.left > 0.0)
        e += extra.left * (at_level - (-w(std::min(cut.phi(0), 0.0))));
    if (extra.right > 0.0)
        e += extra.right * (at_level - (-w(std::min(cut.phi(last), 0.0))));
    CutStep s;
    s.j = j;
    s.energy = e.value();
    s.escaping_mass = esc.value();
    s.escaping_term = at_level * s.escaping_mass;
    return s;
}

/// Classifies the tail of a cut sequence from its last ten steps.
///
/// Diverged: a value above 1e12, or strictly increasing energies together with a
/// nondecreasing escaping term |chi(-j)| m_j.  Converged: all increments <= 1e-6.
inline SequenceVerdict classify_cut_sequence(const std::vector<CutStep>& steps, std::size_t window = 10) {
    if (steps.size() < 2)
        return SequenceVerdict::Undetermined;
    for (const auto& s : steps)
        if (!(s.energy <= 1e12))
            return SequenceVerdict::Diverged;
    const std::size_t first = steps.size() > window ? steps.size() - window : 0;
    bool small = true;
    bool increasing = true;
    bool escaping = true;
    for (std::size_t i = first + 1; i < steps.size(); ++i) {
        const double d = steps[i].energy - steps[i - 1].energy;
        small = small && std::abs(d) <= 1e-6;
        increasing = increasing && d > 0.0;
        escaping = escaping && steps[i].escaping_term >= steps[i - 1].escaping_term * (1.0 - 1e-12) &&
                   steps[i].escaping_term > 0.0;
    }
    if (small)
        return SequenceVerdict::Converged;
    if (increasing && escaping)
        return SequenceVerdict::Diverged;
    return SequenceVerdict::Undetermined;
}

/// The deepest level phi reaches at a flagged unbounded end (after normalisation).
inline double resolved_tail_depth(const RadialProfile& q) {
    double depth = 0.0;
    if (q.unbounded_neg())
        depth = std::max(depth, -q.phi(0));
    if (q.unbounded_pos())
        depth = std::max(depth, -q.phi(q.grid().nodes() - 1));
    return depth;
}

/// Cut energies of the normalised profile at geometric levels inside the range
/// the grid resolves.
inline CutSequence cut_energy_sequence(const RadialProfile& p, const Weight& w, int count = 40) {
    const auto q = normalized(p);
    CutSequence seq;
    const double depth = resolved_tail_depth(q);
    if (depth <= 2.0)
        return seq;
    for (double j : geomspace(1.0, 0.98 * depth, count))
        seq.steps.push_back(cut_energy(q, j, w));
    seq.verdict = classify_cut_sequence(seq.steps);
    return seq;
}

/// E_chi(phi) = int (-chi)(phi - sup phi) MA(phi).
///
/// +inf for a positive Lelong number (the cut energies exceed nu |chi(-j)|).
/// For ends flagged unbounded the cut sequence decides divergence; otherwise
/// the grid model is exact and the sum is returned.
inline double energy(const RadialProfile& p, const Weight& w) {
    if (!p.is_member())
        return kInf;
    const double e = grid_energy(p, w);
    if (!p.unbounded_neg() && !p.unbounded_pos())
        return e;
    const auto seq = cut_energy_sequence(p, w);
    return seq.verdict == SequenceVerdict::Diverged ? kInf : e;
}

// ---------------------------------------------------------------------------
// Dirichlet energy
// ---------------------------------------------------------------------------

namespace detail {

/// int_{-inf}^{t0} g'(t)^2 dt = 1/2 [log(1+u) + 1/(1+u) - 1], u = e^{2 t0}.
inline double fs_tail_gradient(double u) {
    if (u < 1e-4)
        return 0.5 * (u * u / 2.0 - 2.0 * u * u * u / 3.0); // series, avoids cancellation
    return 0.5 * (std::log1p(u) + 1.0 / (1.0 + u) - 1.0);
}

inline double gradient_window(const RadialProfile& p, double lo, double hi) {
    const auto& G = p.grid();
    const double h = G.step();
    CompensatedSum s;
    for (std::size_t k = 0; k + 1 < G.nodes(); ++k) {
        const double a = G.node(k);
        const double b = G.node(k + 1);
        if (a < lo || b > hi)
            continue;
        const double d = p.slope(k) - (fs_potential(b) - fs_potential(a)) / h;
        s += d * d * h;
    }
    return s.value();
}

} // namespace detail

struct GradientReport {
    double value = 0.0;
    bool diverges = false;
    double growth_exponent = 0.0; ///< fitted exponent of window increments (flagged tails only)
    std::vector<double> windows;
    std::vector<double> partial;
};

/// int (phi')^2 dt: grid sum, plus the exact tails of the affine continuation
/// (s- = 0 on the left, s+ = 1 on the right).  At ends flagged unbounded the
/// truncation integrals over |t| <= L are examined: increments over geometric L
/// growing like L^k with k > -0.05 mean divergence.
inline GradientReport gradient_report(const RadialProfile& p) {
    GradientReport r;
    if (!p.is_member()) {
        r.value = kInf;
        r.diverges = true;
        return r;
    }
    const auto& G = p.grid();
    CompensatedSum s;
    s += detail::gradient_window(p, -kInf, kInf);
    s += detail::fs_tail_gradient(std::exp(2.0 * G.tmin));
    s += detail::fs_tail_gradient(std::exp(-2.0 * G.tmax));
    r.value = s.value();
    if (!p.tail_flag_neg() && !p.tail_flag_pos())
        return r;

    const double reach = std::min(p.tail_flag_neg() ? -G.tmin : kInf, p.tail_flag_pos() ? G.tmax : kInf);
    const double lmax = std::min(reach, std::max(-G.tmin, G.tmax));
    if (lmax <= 4.0)
        return r;
    r.windows = geomspace(1.0, lmax, 40);
    for (double L : r.windows)
        r.partial.push_back(detail::gradient_window(p, -L, L));
    // least-squares slope of log(increment) against log(L) over the last ten windows
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = r.windows.size() - 10; i < r.windows.size(); ++i) {
        const double d = r.partial[i] - r.partial[i - 1];
        if (d <= 1e-14)
            return r;
        xs.push_back(std::log(r.windows[i]));
        ys.push_back(std::log(d));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    // increments over [L_{i-1}, L_i] with a fixed ratio scale like L^(k) when the
    // integrand is ~ |t|^(k-1)
    r.growth_exponent = sxy / sxx;
    if (r.growth_exponent > -0.05) {
        r.diverges = true;
        r.value = kInf;
    }
    return r;
}

inline double gradient_energy(const RadialProfile& p) { return gradient_report(p).value; }

// ---------------------------------------------------------------------------
// Fundamental inequality
// ---------------------------------------------------------------------------

struct FundamentalReport {
    double lhs = 0.0; ///< E(b)
    double rhs = 0.0; ///< C^n E(a)
    double constant = 2.0;
    bool ok = true;
};

/// Constant of the fundamental inequality in dimension one: 2 for convex
/// weights, M + 1 for concave weights with growth constant M.
inline double fundamental_constant(const Weight& w) {
    if (w.kind() == WeightKind::ConvexLow)
        return 2.0;
    const auto m = w.growth_constant();
    require(m.has_value(), ErrorKind::InvalidParameter, "concave weight lacks a growth constant");
    return *m + 1.0;
}

/// For phi_a <= phi_b <= 0: E(b) <= C E(a), raw energies.
inline FundamentalReport fundamental_inequality_check(const RadialProfile& a, const RadialProfile& b,
                                                      const Weight& w) {
    require_same_grid(a, b);
    for (std::size_t k = 0; k < a.grid().nodes(); ++k) {
        const double tol = 1e-12 * std::max(1.0, std::abs(a.psi(k)));
        require(a.psi(k) <= b.psi(k) + tol && b.phi(k) <= tol, ErrorKind::PreconditionViolation,
                "fundamental inequality needs phi_a <= phi_b <= 0");
    }
    require(a.slope_neg() >= b.slope_neg() && a.slope_pos() <= b.slope_pos(), ErrorKind::PreconditionViolation,
            "fundamental inequality needs phi_a <= phi_b on the tails");
    FundamentalReport r;
    r.constant = fundamental_constant(w);
    r.lhs = raw_energy(b, w);
    r.rhs = r.constant * raw_energy(a, w);
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-9) + 1e-12;
    return r;
}

} // namespace pluri
