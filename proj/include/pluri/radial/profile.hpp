// SPDX-License-Identifier: MIT
//
// S^1-invariant omega-psh functions on P^1 as convex profiles on the log-line.
//
// A profile stores psi = g + phi at the nodes of a LineGrid together with its
// asymptotic slopes s- (t -> -inf) and s+ (t -> +inf).  Beyond the grid the
// profile is continued affinely with those slopes.  Lelong numbers are
// nu_0 = s- and nu_inf = 1 - s+.
#pragma once

#include "pluri/error.hpp"
#include "pluri/grid.hpp"
#include "pluri/measures.hpp"
#include "pluri/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pluri {

class RadialProfile {
public:
    /// Validating constructor.
    static RadialProfile make(LineGrid grid, std::vector<double> psi, double slope_neg, double slope_pos) {
        RadialProfile p(grid, std::move(psi), slope_neg, slope_pos);
        p.validate();
        return p;
    }

    static RadialProfile from_psi(LineGrid grid, const std::function<double(double)>& psi, double slope_neg,
                                  double slope_pos) {
        std::vector<double> v(grid.nodes());
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = psi(grid.node(k));
        return make(grid, std::move(v), slope_neg, slope_pos);
    }

    static RadialProfile from_phi(LineGrid grid, const std::function<double(double)>& phi, double slope_neg,
                                  double slope_pos) {
        std::vector<double> v(grid.nodes());
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double t = grid.node(k);
            v[k] = fs_potential(t) + phi(t);
        }
        return make(grid, std::move(v), slope_neg, slope_pos);
    }

    /// phi = 0.
    static RadialProfile reference(LineGrid grid) {
        return from_psi(grid, fs_potential, 0.0, 1.0);
    }

    /// psi(t) = t, i.e. phi = log|z| - g: full mass at z = 0.
    static RadialProfile green(LineGrid grid) {
        return from_psi(grid, [](double t) { return t; }, 1.0, 1.0);
    }

    [[nodiscard]] const LineGrid& grid() const { return grid_; }
    [[nodiscard]] const std::vector<double>& psi() const { return psi_; }
    [[nodiscard]] double psi(std::size_t k) const { return psi_[k]; }
    [[nodiscard]] double phi(std::size_t k) const { return psi_[k] - fs_potential(grid_.node(k)); }
    [[nodiscard]] std::vector<double> phi() const {
        std::vector<double> v(psi_.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = phi(k);
        return v;
    }
    [[nodiscard]] double slope_neg() const { return s_neg_; }
    [[nodiscard]] double slope_pos() const { return s_pos_; }
    [[nodiscard]] double lelong_zero() const { return s_neg_; }
    [[nodiscard]] double lelong_inf() const { return 1.0 - s_pos_; }
    /// Full non-pluripolar mass: both Lelong numbers vanish.
    [[nodiscard]] bool is_member() const { return s_neg_ == 0.0 && s_pos_ == 1.0; }

    /// phi -> -inf beyond that end of the grid.  Automatic for a positive Lelong
    /// number; otherwise set by constructions that know their analytic tail.
    [[nodiscard]] bool unbounded_neg() const { return s_neg_ > 0.0 || tail_neg_; }
    [[nodiscard]] bool unbounded_pos() const { return s_pos_ < 1.0 || tail_pos_; }
    [[nodiscard]] bool tail_flag_neg() const { return tail_neg_; }
    [[nodiscard]] bool tail_flag_pos() const { return tail_pos_; }
    [[nodiscard]] RadialProfile with_unbounded_tails(bool neg, bool pos) const {
        RadialProfile p = *this;
        p.tail_neg_ = neg;
        p.tail_pos_ = pos;
        return p;
    }

    /// Forward-difference slope on [t_k, t_{k+1}].
    [[nodiscard]] double slope(std::size_t k) const { return (psi_[k + 1] - psi_[k]) / grid_.step(); }

    [[nodiscard]] RadialProfile shifted(double c) const {
        RadialProfile p = *this;
        for (double& v : p.psi_)
            v += c;
        return p;
    }

    /// Largest violation index of discrete convexity, if any.
    [[nodiscard]] std::optional<std::size_t> convexity_witness() const {
        const double tol = convexity_tolerance();
        std::optional<std::size_t> worst;
        double worst_v = 0.0;
        for (std::size_t k = 1; k + 1 < psi_.size(); ++k) {
            const double d2 = psi_[k - 1] - 2.0 * psi_[k] + psi_[k + 1];
            if (d2 < -tol && d2 < worst_v) {
                worst_v = d2;
                worst = k;
            }
        }
        return worst;
    }

    [[nodiscard]] double convexity_tolerance() const {
        double scale = 1.0;
        for (double v : psi_)
            scale = std::max(scale, std::abs(v));
        return 1e-12 * scale;
    }

    void validate() const {
        grid_.validate();
        require(psi_.size() == grid_.nodes(), ErrorKind::InvalidInput, "psi length does not match grid");
        for (double v : psi_)
            require(std::isfinite(v), ErrorKind::InvalidInput, "psi must be finite on the grid");
        require(s_neg_ >= 0.0 && s_neg_ <= s_pos_ && s_pos_ <= 1.0, ErrorKind::InvalidInput,
                "asymptotic slopes must satisfy 0 <= s- <= s+ <= 1");
        if (auto k = convexity_witness()) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "profile not convex at node %zu (t=%.6g)", *k, grid_.node(*k));
            fail(ErrorKind::ModelViolation, buf);
        }
        const double stol = convexity_tolerance() / grid_.step();
        require(s_neg_ <= slope(0) + stol, ErrorKind::InvalidInput, "s- exceeds the first grid slope");
        require(slope(psi_.size() - 2) <= s_pos_ + stol, ErrorKind::InvalidInput, "last grid slope exceeds s+");
    }

private:
    RadialProfile(LineGrid grid, std::vector<double> psi, double sn, double sp)
        : grid_(grid), psi_(std::move(psi)), s_neg_(sn), s_pos_(sp) {}

    friend RadialProfile unchecked_profile(LineGrid, std::vector<double>, double, double);

    LineGrid grid_;
    std::vector<double> psi_;
    double s_neg_;
    double s_pos_;
    bool tail_neg_ = false;
    bool tail_pos_ = false;
};

/// Builds a profile whose convexity is guaranteed by construction (max of convex, sums).
inline RadialProfile unchecked_profile(LineGrid grid, std::vector<double> psi, double sn, double sp) {
    return RadialProfile(grid, std::move(psi), sn, sp);
}

inline void require_same_grid(const RadialProfile& a, const RadialProfile& b) {
    require(a.grid() == b.grid(), ErrorKind::GridMismatch, "profiles live on different grids");
}

// ---------------------------------------------------------------------------
// Monge-Ampere measure
// ---------------------------------------------------------------------------

/// Grid slopes made nondecreasing and clipped into [s-, s+]; removes rounding noise
/// within the convexity tolerance so that every atom is nonnegative.
inline std::vector<double> monotone_slopes(const RadialProfile& p) {
    const std::size_t n = p.grid().n;
    std::vector<double> s(n);
    double run = p.slope_neg();
    for (std::size_t k = 0; k < n; ++k) {
        run = std::max(run, p.slope(k));
        s[k] = std::min(run, p.slope_pos());
    }
    return s;
}

/// Slope jumps at the nodes, on grid.dual(); charges are the Lelong numbers.
inline LineMeasure ma_measure(const RadialProfile& p) {
    const auto s = monotone_slopes(p);
    const std::size_t n = s.size();
    std::vector<double> atoms(n + 1);
    atoms[0] = s[0] - p.slope_neg();
    for (std::size_t k = 1; k < n; ++k)
        atoms[k] = s[k] - s[k - 1];
    atoms[n] = p.slope_pos() - s[n - 1];
    return LineMeasure{p.grid().dual(), std::move(atoms), p.lelong_zero(), p.lelong_inf()};
}

// ---------------------------------------------------------------------------
// Supremum of phi including the affine tails
// ---------------------------------------------------------------------------

enum class SupLocation { Grid, LeftTail, RightTail };

struct SupInfo {
    double value = -kInf;
    SupLocation where = SupLocation::Grid;
    double t = 0.0; ///< argmax, +-inf for a limit at an end
};

/// sup of phi over the whole line.  Beyond the grid psi is affine with the
/// asymptotic slope, so the tail suprema have closed forms.
inline SupInfo sup_phi(const RadialProfile& p) {
    const auto& G = p.grid();
    SupInfo best;
    for (std::size_t k = 0; k < G.nodes(); ++k) {
        const double v = p.phi(k);
        if (v > best.value)
            best = {v, SupLocation::Grid, G.node(k)};
    }
    const double t0 = G.tmin;
    const double tn = G.tmax;
    const double p0 = p.psi().front();
    const double pn = p.psi().back();
    // tail critical point where g'(t) = s
    auto critical = [](double s) { return 0.5 * std::log(s / (1.0 - s)); };

    const double sn = p.slope_neg();
    if (sn == 0.0) {
        if (p0 > best.value)
            best = {p0, SupLocation::LeftTail, -kInf};
    } else if (sn < 1.0) {
        const double tc = critical(sn);
        if (tc < t0) {
            const double v = p0 + sn * (tc - t0) - fs_potential(tc);
            if (v > best.value)
                best = {v, SupLocation::LeftTail, tc};
        }
    }
    const double sp = p.slope_pos();
    if (sp == 1.0) {
        const double v = pn - tn;
        if (v > best.value)
            best = {v, SupLocation::RightTail, kInf};
    } else if (sp > 0.0) {
        const double tc = critical(sp);
        if (tc > tn) {
            const double v = pn + sp * (tc - tn) - fs_potential(tc);
            if (v > best.value)
                best = {v, SupLocation::RightTail, tc};
        }
    }
    require(std::isfinite(best.value), ErrorKind::GridTooNarrow, "supremum of phi is not bracketed");
    return best;
}

/// The same profile with sup phi = 0.
inline RadialProfile normalized(const RadialProfile& p) { return p.shifted(-sup_phi(p).value); }

// ---------------------------------------------------------------------------
// Cuts and maxima
// ---------------------------------------------------------------------------

/// Profile of max(phi, -j): psi_j = max(psi, g - j), bounded so s- = 0, s+ = 1.
inline RadialProfile canonical_cut(const RadialProfile& p, double j) {
    require(std::isfinite(j) && j > 0.0, ErrorKind::InvalidParameter, "cut level must be positive");
    const auto& G = p.grid();
    std::vector<double> v(G.nodes());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = std::max(p.psi(k), fs_potential(G.node(k)) - j);
    return unchecked_profile(G, std::move(v), 0.0, 1.0);
}

/// Mass of the cut measure carried by a Lelong charge whose crossing with g - j
/// lies beyond the grid; the charge then sits at level -j.
struct BeyondGridCharge {
    double left = 0.0;
    double right = 0.0;
};

inline BeyondGridCharge beyond_grid_charge(const RadialProfile& p, double j) {
    const auto& G = p.grid();
    BeyondGridCharge c;
    if (p.lelong_zero() > 0.0 && p.psi().front() > fs_potential(G.tmin) - j)
        c.left = p.lelong_zero();
    if (p.lelong_inf() > 0.0 && p.psi().back() > fs_potential(G.tmax) - j)
        c.right = p.lelong_inf();
    return c;
}

/// Nodes whose dual cell lies inside {phi > -j}: phi > -j at the node and both
/// neighbours; the end nodes also need a bounded tail above -j.
inline std::vector<char> above_level_cells(const RadialProfile& p, double j) {
    const std::size_t n = p.grid().nodes();
    std::vector<char> raw(n);
    for (std::size_t k = 0; k < n; ++k)
        raw[k] = p.phi(k) > -j;
    std::vector<char> out(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        bool in = raw[k];
        if (k > 0)
            in = in && raw[k - 1];
        else
            in = in && p.slope_neg() == 0.0;
        if (k + 1 < n)
            in = in && raw[k + 1];
        else
            in = in && p.slope_pos() == 1.0;
        out[k] = in;
    }
    return out;
}

/// Profile of max(phi_a, phi_b).
inline RadialProfile max_profiles(const RadialProfile& a, const RadialProfile& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.psi().size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = std::max(a.psi(k), b.psi(k));
    // the larger function near -inf is the one with the smaller slope
    return RadialProfile::make(a.grid(), std::move(v), std::min(a.slope_neg(), b.slope_neg()),
                               std::max(a.slope_pos(), b.slope_pos()));
}

/// (psi_a + psi_b) / 2; Lelong numbers average.
inline RadialProfile midpoint_profile(const RadialProfile& a, const RadialProfile& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.psi().size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = 0.5 * (a.psi(k) + b.psi(k));
    return RadialProfile::make(a.grid(), std::move(v), 0.5 * (a.slope_neg() + b.slope_neg()),
                               0.5 * (a.slope_pos() + b.slope_pos()));
}

// ---------------------------------------------------------------------------
// Random profiles
// ---------------------------------------------------------------------------

struct RandomProfileOptions {
    double lelong_zero = 0.0;
    double lelong_inf = 0.0;
    int smooth_terms = 4;
    int affine_pieces = 2;
    double spread = 1.0; ///< scale of the random offsets
};

/// psi = max( 1/2 log sum a_i e^{2 m_i t}, affine pieces ) with slopes in
/// [s-, s+] and both extreme slopes present, so the Lelong numbers are exact.
inline RadialProfile random_profile(const LineGrid& grid, std::mt19937_64& rng, const RandomProfileOptions& o = {}) {
    const double sn = o.lelong_zero;
    const double sp = 1.0 - o.lelong_inf;
    require(sn >= 0.0 && sn <= sp && sp <= 1.0, ErrorKind::InvalidParameter, "Lelong numbers out of range");
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> ms{sn, sp};
    std::vector<double> ls{o.spread * (U(rng) - 0.5) * 4.0, o.spread * (U(rng) - 0.5) * 4.0};
    for (int i = 0; i < o.smooth_terms; ++i) {
        ms.push_back(sn + (sp - sn) * U(rng));
        ls.push_back(o.spread * (U(rng) - 0.5) * 6.0);
    }
    auto smooth = [&](double t) {
        double m = -kInf;
        for (std::size_t i = 0; i < ms.size(); ++i)
            m = std::max(m, 2.0 * ms[i] * t + ls[i]);
        CompensatedSum s;
        for (std::size_t i = 0; i < ms.size(); ++i)
            s += std::exp(2.0 * ms[i] * t + ls[i] - m);
        return 0.5 * (m + std::log(s.value()));
    };
    const double span = grid.tmax - grid.tmin;
    const double mid = 0.5 * (grid.tmin + grid.tmax);
    std::vector<std::pair<double, double>> pieces;
    for (int i = 0; i < o.affine_pieces; ++i) {
        const double m = sn + (sp - sn) * U(rng);
        const double c = mid + 0.3 * span * (U(rng) - 0.5) * std::min(1.0, 40.0 / span);
        const double b = smooth(c) - m * c + o.spread * U(rng);
        pieces.emplace_back(m, b);
    }
    std::vector<double> v(grid.nodes());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double t = grid.node(k);
        double x = smooth(t);
        for (const auto& [m, b] : pieces)
            x = std::max(x, m * t + b);
        v[k] = x;
    }
    return RadialProfile::make(grid, std::move(v), sn, sp);
}

} // namespace pluri
