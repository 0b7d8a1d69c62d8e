// SPDX-License-Identifier: MIT
//
// Property checks for the radial model.  Each returns a report with the two
// sides of the inequality being tested and the grid tolerance used.
#pragma once

#include "pluri/radial/capacity.hpp"
#include "pluri/radial/energy.hpp"
#include "pluri/radial/profile.hpp"
#include "pluri/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pluri {

// ---------------------------------------------------------------------------
// Canonical approximation and membership
// ---------------------------------------------------------------------------

/// Mass of MA(max(phi, -j)) outside the cells contained in {phi > -j}.
inline double escaping_mass(const RadialProfile& p, double j) {
    const auto m = ma_measure(canonical_cut(p, j));
    const auto inside = above_level_cells(p, j);
    CompensatedSum s;
    for (std::size_t k = 0; k < m.atoms.size(); ++k)
        if (!inside[k])
            s += m.atoms[k];
    return s.value();
}

/// Mass of MA(max(phi, -j)) on the cells inside {phi > -j}.
inline double retained_mass(const RadialProfile& p, double j) {
    const auto m = ma_measure(canonical_cut(p, j));
    const auto inside = above_level_cells(p, j);
    CompensatedSum s;
    for (std::size_t k = 0; k < m.atoms.size(); ++k)
        if (inside[k])
            s += m.atoms[k];
    return s.value();
}

/// Geometric levels from 1 past the deepest grid value of phi.
inline std::vector<double> default_cut_levels(const RadialProfile& p, int count = 30) {
    const auto phis = p.phi();
    const double depth = -*std::min_element(phis.begin(), phis.end());
    return geomspace(1.0, 10.0 * std::max(depth, 0.0) + 10.0, count);
}

struct MembershipReport {
    std::vector<double> js;
    std::vector<double> escaping; ///< m_j
    double limit = 0.0;
    bool member_by_limit = false;
    bool member_exact = false; ///< nu_0 = nu_inf = 0
    bool agree = false;
};

inline MembershipReport membership(const RadialProfile& p, const std::vector<double>& js) {
    require(!js.empty() && std::is_sorted(js.begin(), js.end()), ErrorKind::InvalidParameter,
            "cut levels must be increasing");
    MembershipReport r;
    r.js = js;
    for (double j : js)
        r.escaping.push_back(escaping_mass(p, j));
    r.limit = r.escaping.back();
    r.member_by_limit = r.limit <= 1e-9;
    r.member_exact = p.is_member();
    r.agree = r.member_by_limit == r.member_exact;
    return r;
}

inline MembershipReport membership(const RadialProfile& p) { return membership(p, default_cut_levels(p)); }

struct LocalityReport {
    double max_diff = 0.0;        ///< |MA(cut_j) - MA(phi)| on cells inside {phi > -j}
    double max_nested_diff = 0.0; ///< |MA(cut_j) - MA(cut_k)| on {phi > -k}, j >= k
    double rounding = 0.0;        ///< floating-point resolution of one atom, 4 eps max|psi| / h
    bool retained_monotone = true;
};

/// An atom is a difference of two slopes, each a difference of two psi values over
/// h, so its rounding error is at most about 4 eps max|psi| / h.
inline double atom_rounding(const RadialProfile& p) {
    double scale = 1.0;
    for (double v : p.psi())
        scale = std::max(scale, std::abs(v));
    return 4.0 * std::numeric_limits<double>::epsilon() * scale / p.grid().step();
}

/// Locality of the cut measures on {phi > -j} and monotonicity of the retained mass.
inline LocalityReport locality_check(const RadialProfile& p, const std::vector<double>& js) {
    LocalityReport r;
    r.rounding = atom_rounding(p);
    const auto full = ma_measure(p);
    std::vector<LineMeasure> cuts;
    std::vector<std::vector<char>> sets;
    double prev_retained = -1.0;
    for (double j : js) {
        cuts.push_back(ma_measure(canonical_cut(p, j)));
        sets.push_back(above_level_cells(p, j));
        CompensatedSum kept;
        for (std::size_t k = 0; k < full.atoms.size(); ++k) {
            if (!sets.back()[k])
                continue;
            kept += cuts.back().atoms[k];
            r.max_diff = std::max(r.max_diff, std::abs(cuts.back().atoms[k] - full.atoms[k]));
        }
        if (kept.value() < prev_retained - r.rounding)
            r.retained_monotone = false;
        prev_retained = kept.value();
    }
    for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = a + 1; b < js.size(); ++b)
            for (std::size_t k = 0; k < full.atoms.size(); ++k)
                if (sets[a][k])
                    r.max_nested_diff = std::max(r.max_nested_diff, std::abs(cuts[a].atoms[k] - cuts[b].atoms[k]));
    return r;
}

// ---------------------------------------------------------------------------
// Comparison principle
// ---------------------------------------------------------------------------

struct ComparisonReport {
    double lhs = 0.0; ///< MA(b) on {phi_a < phi_b}
    double rhs = 0.0; ///< MA(a) on {phi_a < phi_b}
    double slack = 0.0;
    double eps_grid = 0.0;
    bool ok = true;
};

inline ComparisonReport comparison_check(const RadialProfile& a, const RadialProfile& b) {
    require_same_grid(a, b);
    require(a.is_member() && b.is_member(), ErrorKind::PreconditionViolation,
            "comparison principle needs full-mass profiles");
    const auto ma = ma_measure(a);
    const auto mb = ma_measure(b);
    CompensatedSum l, r;
    for (std::size_t k = 0; k < ma.atoms.size(); ++k) {
        if (a.phi(k) < b.phi(k)) {
            l += mb.atoms[k];
            r += ma.atoms[k];
        }
    }
    ComparisonReport rep;
    rep.lhs = l.value();
    rep.rhs = r.value();
    rep.slack = rep.rhs - rep.lhs;
    rep.eps_grid = 2.0 * std::max(ma.max_atom(), mb.max_atom());
    rep.ok = rep.slack >= -rep.eps_grid;
    return rep;
}

/// MA(max(a, b)) >= mu cellwise when MA(a) >= mu and MA(b) >= mu; returns the
/// smallest cellwise slack MA(max) - mu + eps_grid.
inline double max_domination_slack(const RadialProfile& a, const RadialProfile& b, const LineMeasure& mu) {
    const auto mm = ma_measure(max_profiles(a, b));
    require(mm.grid == mu.grid, ErrorKind::GridMismatch, "target measure lives on another grid");
    const double eps = 2.0 * std::max(ma_measure(a).max_atom(), ma_measure(b).max_atom());
    double worst = kInf;
    for (std::size_t k = 0; k < mm.atoms.size(); ++k) {
        // cells next to the switching set are ambiguous at grid resolution
        worst = std::min(worst, mm.atoms[k] - mu.atoms[k] + eps);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Decreasing sequences
// ---------------------------------------------------------------------------

/// (-chi)(phi - sup phi) MA(phi) as a measure.
inline LineMeasure weighted_measure(const RadialProfile& p, const Weight& w, double sup) {
    auto m = ma_measure(p);
    for (std::size_t k = 0; k < m.atoms.size(); ++k)
        m.atoms[k] *= -w(std::min(p.phi(k) - sup, 0.0));
    m.charge_neg_inf = 0.0;
    m.charge_pos_inf = 0.0;
    return m;
}

struct ConvergenceReport {
    std::vector<double> js;
    std::vector<double> plain;    ///< sup over half-lines |MA(phi_j) - MA(phi)|
    std::vector<double> weighted; ///< same for (-chi_small)(phi_j) MA(phi_j)
    double eps_grid = 0.0;
    double locality = 0.0; ///< max |MA(phi_j) - MA(phi)| on cells inside {phi > -j}
    bool plain_monotone = true;
    bool weighted_monotone = true;
    bool converged = true;
};

/// phi_j = max(phi, -j) decreases to phi; MA(phi_j) and chi_small(phi_j) MA(phi_j)
/// converge against half-line indicators.
inline ConvergenceReport decreasing_convergence_check(const RadialProfile& p, const Weight& w,
                                                      const Weight& w_small, const std::vector<double>& js) {
    require(std::isfinite(energy(p, w)), ErrorKind::PreconditionViolation, "profile must have finite energy");
    require(growth_dominates(w_small, w) == Growth::LittleO, ErrorKind::PreconditionViolation,
            "test weight must be little-o of the energy weight");
    const auto q = normalized(p);
    const auto full = ma_measure(q);
    const auto full_w = weighted_measure(q, w_small, 0.0);
    ConvergenceReport r;
    r.js = js;
    for (double j : js) {
        const auto cut = canonical_cut(q, j);
        const auto m = ma_measure(cut);
        r.plain.push_back(kolmogorov_distance(m, full));
        r.weighted.push_back(kolmogorov_distance(weighted_measure(cut, w_small, 0.0), full_w));
        r.eps_grid = std::max(r.eps_grid, 2.0 * std::max(m.max_atom(), full.max_atom()));
        const auto inside = above_level_cells(q, j);
        for (std::size_t k = 0; k < m.atoms.size(); ++k)
            if (inside[k])
                r.locality = std::max(r.locality, std::abs(m.atoms[k] - full.atoms[k]));
    }
    for (std::size_t i = 1; i < js.size(); ++i) {
        r.plain_monotone = r.plain_monotone && r.plain[i] <= r.plain[i - 1] + 1e-15;
        r.weighted_monotone = r.weighted_monotone && r.weighted[i] <= r.weighted[i - 1] + 1e-15;
    }
    double wscale = 2.0 * full_w.max_atom();
    r.converged = r.plain.back() <= r.eps_grid && r.weighted.back() <= std::max(r.eps_grid, wscale);
    return r;
}

// ---------------------------------------------------------------------------
// Integrability of target measures
// ---------------------------------------------------------------------------

struct DominationReport {
    double max_ratio = 0.0; ///< max over the family of int (-phi)^p dmu / E_p(phi)^{p/(p+1)}
    std::vector<double> ratios;
    double fit_a = 0.0;     ///< mu(E) ~ A Cap(E)^alpha, least squares in log-log
    double fit_alpha = 0.0;
    double envelope_a = 0.0; ///< smallest A with mu(E) <= A Cap(E)^alpha on every sample
    std::size_t samples = 0;
    bool unbounded = false;
};

inline DominationReport domination_check(const LineMeasure& mu, double p_exp, const std::vector<RadialProfile>& family,
                                         int levels = 12) {
    require(mu.non_pluripolar(), ErrorKind::PreconditionViolation, "target must not charge pluripolar sets");
    require(p_exp > 0.0, ErrorKind::InvalidParameter, "exponent must be positive");
    const auto w = make_power(p_exp);
    DominationReport r;
    std::vector<double> lx, ly;
    for (const auto& f : family) {
        require(ma_measure(f).grid == mu.grid, ErrorKind::GridMismatch, "family and target grids differ");
        const auto q = f.shifted(-1.0 - sup_phi(f).value);
        CompensatedSum num;
        for (std::size_t k = 0; k < mu.atoms.size(); ++k)
            num += std::pow(-q.phi(k), p_exp) * mu.atoms[k];
        const double den = std::pow(raw_energy(q, w), p_exp / (p_exp + 1.0));
        const double ratio = num.value() / den;
        r.ratios.push_back(ratio);
        r.max_ratio = std::max(r.max_ratio, ratio);

        const auto phis = q.phi();
        const double depth = -*std::min_element(phis.begin(), phis.end());
        if (depth <= 1.6)
            continue;
        for (double s : geomspace(1.5, 0.95 * depth, levels)) {
            auto e = sublevel_set(q, s);
            CompensatedSum me;
            for (std::size_t k = 0; k < mu.atoms.size(); ++k)
                if (e[k])
                    me += mu.atoms[k];
            const double cap = capacity_of_set(q.grid(), std::move(e)).capacity;
            if (me.value() > 0.0 && cap > 0.0) {
                lx.push_back(std::log(cap));
                ly.push_back(std::log(me.value()));
            }
        }
    }
    r.samples = lx.size();
    if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        r.fit_alpha = sxx > 0 ? sxy / sxx : 0.0;
        r.fit_a = std::exp(my - r.fit_alpha * mx);
        for (std::size_t i = 0; i < lx.size(); ++i)
            r.envelope_a = std::max(r.envelope_a, std::exp(ly[i] - r.fit_alpha * lx[i]));
    }
    r.unbounded = !std::isfinite(r.max_ratio) || r.max_ratio > 1e6;
    return r;
}

// ---------------------------------------------------------------------------
// Perturbed reference forms
// ---------------------------------------------------------------------------

struct StabilityReport {
    std::vector<double> eps;
    std::vector<double> distances; ///< Kolmogorov distance of normalised MA measures
    std::vector<double> energies;
    double eps_grid = 0.0;
    bool monotone = true;
    bool below_grid = false;
    bool bounded = true;
};

/// Reference g_j = (1 + eps_j) g and phi_j = phi + eps_j, so that
/// psi_j = psi + eps_j (g + 1) has slopes in [0, 1 + eps_j] and phi_j decreases
/// to phi.  Measures are divided by their mass 1 + eps_j.
inline StabilityReport reference_perturbation_check(const RadialProfile& p, const std::vector<double>& eps,
                                                    const Weight& w) {
    const auto base = ma_measure(p);
    const auto ref = ma_measure(RadialProfile::reference(p.grid()));
    const auto q = normalized(p);
    StabilityReport r;
    r.eps = eps;
    r.eps_grid = 2.0 * base.max_atom();
    for (double e : eps) {
        require(e >= 0.0, ErrorKind::InvalidParameter, "perturbations must be nonnegative");
        LineMeasure m = base;
        for (std::size_t k = 0; k < m.atoms.size(); ++k)
            m.atoms[k] = (base.atoms[k] + e * ref.atoms[k]) / (1.0 + e);
        m.charge_neg_inf = base.charge_neg_inf / (1.0 + e);
        m.charge_pos_inf = base.charge_pos_inf / (1.0 + e);
        r.distances.push_back(kolmogorov_distance(m, base));
        // phi_j - sup phi_j = phi - sup phi
        CompensatedSum en;
        for (std::size_t k = 0; k < m.atoms.size(); ++k)
            en += -w(std::min(q.phi(k), 0.0)) * m.atoms[k];
        r.energies.push_back(p.is_member() ? en.value() : kInf);
    }
    for (std::size_t i = 1; i < r.distances.size(); ++i)
        r.monotone = r.monotone && r.distances[i] <= r.distances[i - 1];
    r.below_grid = !r.distances.empty() && r.distances.back() <= r.eps_grid;
    for (double e : r.energies)
        r.bounded = r.bounded && std::isfinite(e);
    return r;
}

} // namespace pluri
