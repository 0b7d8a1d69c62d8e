// SPDX-License-Identifier: MIT
//
// Admissible weights chi : R^- -> R^- for weighted Monge-Ampere energies.
//
// Two classes are modelled.  ConvexLow weights are convex with chi(0) = 0 and
// chi(-inf) = -inf (low energy).  ConcaveHigh weights are concave with the
// growth control |t chi'(t)| <= M |chi(t)| (high energy).  Properties are
// checked on a logarithmic probe grid in |t|, which is the testable surrogate
// for "for all t <= 0".
#pragma once

#include "pluri/error.hpp"
#include "pluri/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pluri {

enum class WeightKind { ConvexLow, ConcaveHigh };

inline const char* to_string(WeightKind k) {
    return k == WeightKind::ConvexLow ? "convex-low" : "concave-high";
}

/// Constants (C, M, q) of the quasi-homogeneity sandwich
///   C^-1 eps^M |chi(t)| <= |chi(eps t)| <= C eps^(M-q) |chi(t)|,  t <= -1.
struct QuasiHomog {
    double c = 1.0;
    double m = 1.0;
    double q = 0.0;

    [[nodiscard]] double gamma() const { return m / (m - q + 1.0); }
};

/// Convex increasing piecewise-linear gamma : R^+ -> R^+ with gamma(0) = 0,
/// together with its Young conjugate gamma*(z) = sup_y (z y - gamma(y)).
///
/// knots[0] = 0 < knots[1] < ... ; slopes[k] is the slope on
/// [knots[k], knots[k+1]] and the last slope extends to infinity.
class PiecewiseLinearConvex {
public:
    PiecewiseLinearConvex(std::vector<double> knots, std::vector<double> slopes)
        : knots_(std::move(knots)), slopes_(std::move(slopes)) {
        require(!knots_.empty() && knots_.size() == slopes_.size(), ErrorKind::InvalidParameter,
                "knots and slopes must have equal nonzero length");
        require(knots_[0] == 0.0 && slopes_[0] >= 0.0, ErrorKind::InvalidParameter,
                "gamma must start at 0 with nonnegative slope");
        for (std::size_t k = 1; k < knots_.size(); ++k) {
            require(knots_[k] > knots_[k - 1], ErrorKind::InvalidParameter, "knots must increase");
            require(slopes_[k] > slopes_[k - 1], ErrorKind::InvalidParameter, "slopes must increase");
        }
        values_.resize(knots_.size());
        values_[0] = 0.0;
        for (std::size_t k = 1; k < knots_.size(); ++k)
            values_[k] = values_[k - 1] + slopes_[k - 1] * (knots_[k] - knots_[k - 1]);
        // gamma*(slopes[k]) = slopes[k] * knots[k] - gamma(knots[k]); between consecutive
        // slopes the conjugate is affine with slope knots[k].
        conj_at_slope_.resize(knots_.size());
        for (std::size_t k = 0; k < knots_.size(); ++k)
            conj_at_slope_[k] = slopes_[k] * knots_[k] - values_[k];
    }

    [[nodiscard]] double operator()(double y) const {
        if (y <= 0.0)
            return 0.0;
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), y);
        const auto k = static_cast<std::size_t>(it - knots_.begin()) - 1;
        return values_[k] + slopes_[k] * (y - knots_[k]);
    }

    /// gamma*(z) for z >= 0.
    [[nodiscard]] double conjugate(double z) const {
        if (z <= slopes_[0])
            return z * knots_[0] - values_[0];
        const auto it = std::upper_bound(slopes_.begin(), slopes_.end(), z);
        const auto k = static_cast<std::size_t>(it - slopes_.begin());
        if (k == slopes_.size()) // beyond the last slope gamma* is infinite in exact arithmetic;
            return conj_at_slope_.back() + (z - slopes_.back()) * knots_.back() * 2.0;
        // z in [slopes[k-1], slopes[k]): maximiser is knots[k]
        return z * knots_[k] - values_[k];
    }

    /// Inverse of the conjugate on [0, inf).  The conjugate is strictly increasing
    /// once positive, so the inverse is located by bisection over breakpoints.
    [[nodiscard]] double conjugate_inverse(double s) const {
        if (s <= 0.0)
            return 0.0;
        std::size_t lo = 0;
        std::size_t hi = conj_at_slope_.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (conj_at_slope_[mid] <= s)
                lo = mid;
            else
                hi = mid;
        }
        if (lo + 1 == conj_at_slope_.size())
            return slopes_.back() + (s - conj_at_slope_.back()) / (2.0 * knots_.back());
        return slopes_[lo] + (s - conj_at_slope_[lo]) / knots_[lo + 1];
    }

    [[nodiscard]] std::span<const double> knots() const { return knots_; }
    [[nodiscard]] std::span<const double> slopes() const { return slopes_; }

private:
    std::vector<double> knots_;
    std::vector<double> slopes_;
    std::vector<double> values_;
    std::vector<double> conj_at_slope_;
};

/// An admissible weight.  Immutable; copies share the evaluators.
class Weight {
public:
    using Fn = std::function<double(double)>;
    using Params = std::vector<std::pair<std::string, double>>;

    Weight(std::string family, Params params, WeightKind kind, Fn value, Fn derivative)
        : family_(std::move(family)), params_(std::move(params)), kind_(kind),
          value_(std::move(value)), derivative_(std::move(derivative)) {}

    [[nodiscard]] double operator()(double t) const { return value_(t); }
    [[nodiscard]] double derivative(double t) const { return derivative_(t); }

    [[nodiscard]] WeightKind kind() const { return kind_; }
    [[nodiscard]] const std::string& family() const { return family_; }
    [[nodiscard]] const Params& params() const { return params_; }
    [[nodiscard]] std::optional<double> growth_constant() const { return growth_m_; }
    [[nodiscard]] const std::optional<QuasiHomog>& quasi_homog() const { return quasi_homog_; }
    [[nodiscard]] const PiecewiseLinearConvex* young_gamma() const { return gamma_.get(); }
    /// lim chi(t)/t as t -> -inf, when known in closed form.
    [[nodiscard]] std::optional<double> asymptotic_slope() const { return asymptotic_slope_; }

    /// "power:p=0.5" style identifier; round-trips through parse_weight.
    [[nodiscard]] std::string label() const {
        std::string out = family_;
        char sep = ':';
        for (const auto& [k, v] : params_) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%c%s=%.17g", sep, k.c_str(), v);
            out += buf;
            sep = ',';
        }
        return out;
    }

    Weight with_growth_constant(double m) const {
        Weight w = *this;
        w.growth_m_ = m;
        return w;
    }
    Weight with_quasi_homog(QuasiHomog qh) const {
        Weight w = *this;
        w.quasi_homog_ = qh;
        return w;
    }
    Weight with_kind(WeightKind k) const {
        Weight w = *this;
        w.kind_ = k;
        return w;
    }
    Weight with_asymptotic_slope(double d) const {
        Weight w = *this;
        w.asymptotic_slope_ = d;
        return w;
    }
    Weight with_young_gamma(std::shared_ptr<const PiecewiseLinearConvex> g) const {
        Weight w = *this;
        w.gamma_ = std::move(g);
        return w;
    }

private:
    std::string family_;
    Params params_;
    WeightKind kind_;
    Fn value_;
    Fn derivative_;
    std::optional<double> growth_m_;
    std::optional<QuasiHomog> quasi_homog_;
    std::shared_ptr<const PiecewiseLinearConvex> gamma_;
    std::optional<double> asymptotic_slope_;
};

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

/// chi(t) = -(-t)^p.  Convex for p <= 1, concave with M = p for p >= 1.
inline Weight make_power(double p) {
    require(std::isfinite(p) && p > 0.0, ErrorKind::InvalidParameter, "power weight needs p > 0");
    auto value = [p](double t) { return p == 1.0 ? std::min(t, 0.0) : -std::pow(std::max(-t, 0.0), p); };
    auto deriv = [p](double t) {
        const double s = std::max(-t, 0.0);
        if (p == 1.0)
            return 1.0;
        if (s == 0.0)
            return p < 1.0 ? kInf : 0.0;
        return p * std::pow(s, p - 1.0);
    };
    Weight w = Weight("power", {{"p", p}}, p <= 1.0 ? WeightKind::ConvexLow : WeightKind::ConcaveHigh, value, deriv)
                   .with_asymptotic_slope(p < 1.0 ? 0.0 : (p == 1.0 ? 1.0 : kInf));
    if (p >= 1.0)
        w = w.with_growth_constant(p).with_quasi_homog({1.0, p, 0.0});
    return w;
}

/// m-fold composition of L(t) = -log(1 - t).
inline Weight make_log_iterated(int m) {
    require(m >= 1, ErrorKind::InvalidParameter, "iterated log weight needs m >= 1");
    auto value = [m](double t) {
        double x = std::min(t, 0.0);
        for (int i = 0; i < m; ++i)
            x = -std::log1p(-x);
        return x;
    };
    auto deriv = [m](double t) {
        double x = std::min(t, 0.0);
        double d = 1.0;
        for (int i = 0; i < m; ++i) {
            d *= 1.0 / (1.0 - x);
            x = -std::log1p(-x);
        }
        return d;
    };
    return Weight("logiter", {{"m", static_cast<double>(m)}}, WeightKind::ConvexLow, value, deriv)
        .with_asymptotic_slope(0.0);
}

namespace detail {

inline double qh_log(double s) { return std::log(std::numbers::e + s); }

/// sup over s >= 0 of s / ((e + s) log(e + s)), located by a dense scan and a
/// golden-section refinement; the function is unimodal on (0, inf).
inline double qh_growth_excess() {
    auto f = [](double s) { return s / ((std::numbers::e + s) * qh_log(s)); };
    const auto grid = geomspace(1e-3, 1e9, 4000);
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (f(grid[i]) > f(grid[best]))
            best = i;
    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double c = b - r * (b - a);
        const double d = a + r * (b - a);
        if (f(c) > f(d))
            b = d;
        else
            a = c;
    }
    return f(0.5 * (a + b));
}

} // namespace detail

std::vector<double> probe_grid();
std::vector<double> sandwich_eps_grid();
std::vector<double> sandwich_t_grid();

/// chi(t) = -(-t)^p [log(e - t)]^a, p >= 1, a > 0.
///
/// Growth constant M = p + a sup_s s/((e+s) log(e+s)).  Quasi-homogeneity
/// constants: q = min(a, 1/2), M_qh = p + q, and C = max over x >= 0 of
/// (1 + x)^a e^{-q x}, from log(e+s)/log(e+eps s) <= 1 + log(1/eps).
/// The sandwich is then confirmed on the probe grid.
inline Weight make_quasi_homog(double p, double a) {
    require(std::isfinite(p) && p >= 1.0, ErrorKind::InvalidParameter, "quasi-homogeneous weight needs p >= 1");
    require(std::isfinite(a) && a > 0.0, ErrorKind::InvalidParameter, "quasi-homogeneous weight needs a > 0");
    auto value = [p, a](double t) {
        const double s = std::max(-t, 0.0);
        return -std::pow(s, p) * std::pow(detail::qh_log(s), a);
    };
    auto deriv = [p, a](double t) {
        const double s = std::max(-t, 0.0);
        const double l = detail::qh_log(s);
        const double first = s == 0.0 ? (p == 1.0 ? 1.0 : 0.0) : p * std::pow(s, p - 1.0) * std::pow(l, a);
        return first + a * std::pow(s, p) * std::pow(l, a - 1.0) / (std::numbers::e + s);
    };
    const double q = std::min(a, 0.5);
    const double c = a <= q ? 1.0 : std::pow(a / q, a) * std::exp(q - a);
    const QuasiHomog qh{c * (1.0 + 1e-12), p + q, q};
    Weight w = Weight("qh", {{"p", p}, {"a", a}}, WeightKind::ConcaveHigh, value, deriv)
                   .with_growth_constant((p + a * detail::qh_growth_excess()) * (1.0 + 1e-12))
                   .with_quasi_homog(qh)
                   .with_asymptotic_slope(kInf);

    for (double eps : sandwich_eps_grid()) {
        for (double t : probe_grid()) {
            if (t > -1.0)
                continue;
            const double base = std::abs(w(t));
            const double scaled = std::abs(w(eps * t));
            const double lower = std::pow(eps, qh.m) * base / qh.c;
            const double upper = qh.c * std::pow(eps, qh.m - qh.q) * base;
            if (scaled < lower * (1.0 - 1e-12) || scaled > upper * (1.0 + 1e-12)) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "quasi-homogeneity sandwich violated at eps=%g, t=%g", eps, t);
                fail(ErrorKind::ConstructionFailure, buf);
            }
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Probe grids
// ---------------------------------------------------------------------------

/// t in {-10^0, ..., -10^6}, eight points per decade, increasing |t|.
inline std::vector<double> probe_grid() {
    std::vector<double> out;
    for (int k = 0; k <= 48; ++k)
        out.push_back(-std::pow(10.0, k / 8.0));
    return out;
}

inline std::vector<double> sandwich_eps_grid() {
    std::vector<double> out;
    for (int k = 1; k <= 10; ++k)
        out.push_back(k / 10.0);
    return out;
}

/// t in {-1.5, ..., -10^6}.
inline std::vector<double> sandwich_t_grid() {
    auto g = geomspace(1.5, 1e6, 41);
    for (double& x : g)
        x = -x;
    return g;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct CheckOutcome {
    std::string name;
    bool pass = true;
    double worst_slack = kInf; ///< min over probes of (allowed - observed), normalised
    double witness_t = 0.0;
    double witness_eps = 1.0;
};

struct ValidationReport {
    std::vector<CheckOutcome> checks;

    [[nodiscard]] bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
    }
    [[nodiscard]] const CheckOutcome* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
};

namespace detail {

class CheckBuilder {
public:
    explicit CheckBuilder(std::string name, double tol) : tol_(tol) { out_.name = std::move(name); }

    /// Record "observed <= allowed" with slack normalised by scale.
    void le(double observed, double allowed, double scale, double t, double eps = 1.0) {
        const double slack = (allowed - observed) / std::max(scale, 1e-300);
        if (!(slack >= out_.worst_slack) || std::isnan(slack)) {
            out_.worst_slack = std::isnan(slack) ? -kInf : slack;
            out_.witness_t = t;
            out_.witness_eps = eps;
        }
        if (!(slack >= -tol_))
            out_.pass = false;
    }
    CheckOutcome done() { return std::move(out_); }

private:
    double tol_;
    CheckOutcome out_;
};

} // namespace detail

/// Check the weight against the invariants of the given class.  `m` is the growth
/// constant used for ConcaveHigh (defaults to the weight's own).
inline ValidationReport validate_as(const Weight& w, WeightKind kind, std::optional<double> m = std::nullopt,
                                    double rel_tol = 1e-12) {
    ValidationReport rep;
    const auto probes = probe_grid();

    {
        detail::CheckBuilder c("normalization", 0.0);
        c.le(std::abs(w(0.0)), 0.0, 1.0, 0.0);
        rep.checks.push_back(c.done());
    }
    {
        // |chi| strictly increasing along the probes (starting from t = 0), and
        // still growing far out, as the surrogate for chi(-inf) = -inf.
        detail::CheckBuilder c("monotone-unbounded", 0.0);
        double prev = std::abs(w(0.0));
        double prev_t = 0.0;
        for (double t : probes) {
            const double v = std::abs(w(t));
            c.le(prev, v > prev ? v : prev - 1.0, std::max(1.0, v), prev_t);
            prev = v;
            prev_t = t;
        }
        const double far = std::abs(w(-1e30));
        c.le(prev, far > prev ? far : prev - 1.0, std::max(1.0, far), -1e30);
        rep.checks.push_back(c.done());
    }
    {
        // Divided-difference slopes along increasing t.
        detail::CheckBuilder c(kind == WeightKind::ConvexLow ? "convexity" : "concavity", 1e-9);
        std::vector<double> ts(probes.rbegin(), probes.rend());
        ts.push_back(0.0);
        std::vector<double> slopes;
        double scale = 0.0;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            slopes.push_back((w(ts[i + 1]) - w(ts[i])) / (ts[i + 1] - ts[i]));
            scale = std::max(scale, std::abs(slopes.back()));
        }
        for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
            if (kind == WeightKind::ConvexLow)
                c.le(slopes[i], slopes[i + 1], scale, ts[i + 1]);
            else
                c.le(slopes[i + 1], slopes[i], scale, ts[i + 1]);
        }
        rep.checks.push_back(c.done());
    }
    if (kind == WeightKind::ConvexLow) {
        detail::CheckBuilder c("derivative-bound", rel_tol);
        for (double t : probes) {
            const double lhs = -t * w.derivative(t);
            const double rhs = -w(t);
            c.le(-lhs, 0.0, std::max(1.0, rhs), t);
            c.le(lhs, rhs, std::max(1.0, rhs), t);
        }
        rep.checks.push_back(c.done());
    } else {
        const double mm = m.value_or(w.growth_constant().value_or(kInf));
        {
            detail::CheckBuilder c("derivative-bound", rel_tol);
            for (double t : probes) {
                const double lhs = std::abs(t * w.derivative(t));
                const double rhs = mm * std::abs(w(t));
                c.le(lhs, rhs, std::max(1e-300, rhs), t);
            }
            rep.checks.push_back(c.done());
        }
        {
            // eps^M |chi(t)| <= |chi(eps t)| <= eps |chi(t)|
            detail::CheckBuilder c("scaling-sandwich", rel_tol);
            for (double eps : sandwich_eps_grid()) {
                for (double t : sandwich_t_grid()) {
                    const double base = std::abs(w(t));
                    const double mid = std::abs(w(eps * t));
                    c.le(std::pow(eps, mm) * base, mid, mid, t, eps);
                    c.le(mid, eps * base, mid, t, eps);
                }
            }
            rep.checks.push_back(c.done());
        }
        {
            // |chi(2t)| <= 2^M |chi(t)|  and  0 <= chi'(2t) <= M 2^(M-1) chi'(t); the
            // second follows from the first, |chi| <= |t| chi' and |t chi'| <= M |chi|
            detail::CheckBuilder c("doubling", rel_tol);
            detail::CheckBuilder d("derivative-doubling", rel_tol);
            for (double t : probes) {
                const double v2 = std::abs(w(2.0 * t));
                const double bound = std::pow(2.0, mm) * std::abs(w(t));
                c.le(v2, bound, bound, t);
                const double d2 = w.derivative(2.0 * t);
                const double dbound = mm * std::pow(2.0, mm - 1.0) * w.derivative(t);
                d.le(-d2, 0.0, std::max(1e-300, dbound), t);
                d.le(d2, dbound, std::max(1e-300, dbound), t);
            }
            rep.checks.push_back(c.done());
            rep.checks.push_back(d.done());
        }
    }
    if (const auto& qh = w.quasi_homog(); qh) {
        detail::CheckBuilder c("quasi-homogeneity", rel_tol);
        for (double eps : sandwich_eps_grid()) {
            for (double t : probes) {
                if (t > -1.0)
                    continue;
                const double base = std::abs(w(t));
                const double mid = std::abs(w(eps * t));
                c.le(std::pow(eps, qh->m) * base / qh->c, mid, mid, t, eps);
                c.le(mid, qh->c * std::pow(eps, qh->m - qh->q) * base, mid, t, eps);
            }
        }
        const double g = qh->gamma();
        c.le(-g, 0.0, 1.0, 0.0);
        c.le(g, 1.0 - 1e-15, 1.0, 0.0);
        c.le(1.0, qh->m, 1.0, 0.0);
        rep.checks.push_back(c.done());
    }
    return rep;
}

inline ValidationReport validate(const Weight& w) { return validate_as(w, w.kind()); }

// ---------------------------------------------------------------------------
// Growth comparison
// ---------------------------------------------------------------------------

enum class Growth { LittleO, BigO, Neither };

inline const char* to_string(Growth g) {
    switch (g) {
    case Growth::LittleO: return "little-o";
    case Growth::BigO: return "big-o";
    case Growth::Neither: return "neither";
    }
    return "?";
}

/// Classifies |small(t) / big(t)| as t -> -inf on |t| in [1, 1e12].
///
/// LittleO: the ratio is nonincreasing over the last third of the probes and
/// has dropped below 1% of its maximum.  Neither: nondecreasing over the last
/// third and above 100x its minimum.  Otherwise BigO.
inline Growth growth_dominates(const Weight& small, const Weight& big) {
    const auto s = geomspace(1.0, 1e12, 49);
    std::vector<double> r;
    for (double x : s)
        r.push_back(std::abs(small(-x)) / std::abs(big(-x)));
    const double rmax = *std::max_element(r.begin(), r.end());
    const double rmin = *std::min_element(r.begin(), r.end());
    const std::size_t tail = r.size() - r.size() / 3;
    bool nonincreasing = true;
    bool nondecreasing = true;
    for (std::size_t i = tail; i < r.size(); ++i) {
        nonincreasing = nonincreasing && r[i] <= r[i - 1] * (1.0 + 1e-12);
        nondecreasing = nondecreasing && r[i] >= r[i - 1] * (1.0 - 1e-12);
    }
    if (nonincreasing && r.back() <= 0.01 * rmax)
        return Growth::LittleO;
    if (nondecreasing && r.back() >= 100.0 * rmin)
        return Growth::Neither;
    return Growth::BigO;
}

// ---------------------------------------------------------------------------
// Young-adapted weights
// ---------------------------------------------------------------------------

/// Build gamma from dyadic superlevel sets of a density f against base masses:
/// level k is the smallest data value y with sum_{f > y} f * base <= 2^-k * I
/// (I = sum f * base), forced to at least double the previous level and to be
/// >= 1.  gamma has slope k after level k, so sum gamma(f) * base <= I.  Past the
/// data the levels keep doubling, which makes gamma superlinear.
inline std::shared_ptr<const PiecewiseLinearConvex> adapted_gamma(std::span<const double> f,
                                                                  std::span<const double> base) {
    require(f.size() == base.size(), ErrorKind::InvalidInput, "density and base masses differ in length");
    std::vector<std::pair<double, double>> data; // (f, f * base) with base > 0
    CompensatedSum total;
    for (std::size_t i = 0; i < f.size(); ++i) {
        require(f[i] >= 0.0 && base[i] >= 0.0 && !std::isnan(f[i]) && std::isfinite(base[i]),
                ErrorKind::InvalidInput, "density and base masses must be nonnegative");
        if (base[i] == 0.0 || f[i] == 0.0)
            continue;
        require(std::isfinite(f[i]), ErrorKind::InvalidInput, "density is infinite on a charged cell");
        data.emplace_back(f[i], f[i] * base[i]);
        total += f[i] * base[i];
    }
    const double integral = total.value();
    require(std::isfinite(integral), ErrorKind::InvalidInput, "density is not integrable");
    std::sort(data.begin(), data.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    // prefix[i] = sum of f * base over the i largest values
    std::vector<double> prefix(data.size() + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t i = 0; i < data.size(); ++i) {
        acc += data[i].second;
        prefix[i + 1] = acc.value();
    }
    std::vector<double> knots{0.0};
    std::vector<double> slopes{0.0};
    const double fmax = data.empty() ? 0.0 : data.front().first;
    std::size_t len = data.size();
    for (int k = 1; integral > 0.0 && (knots.size() == 1 || knots.back() < fmax); ++k) {
        const double target = std::ldexp(integral, -k);
        // longest prefix with sum <= target that does not split a run of equal values
        while (len > 0 && prefix[len] > target)
            --len;
        while (len > 0 && len < data.size() && data[len].first == data[len - 1].first)
            --len;
        const double y = len < data.size() ? data[len].first : 0.0;
        const double level = std::max({y, knots.size() > 1 ? 2.0 * knots.back() : 1.0, 1.0});
        knots.push_back(level);
        slopes.push_back(static_cast<double>(k));
    }
    if (knots.size() == 1) {
        knots.push_back(1.0);
        slopes.push_back(1.0);
    }
    while (knots.back() < 1e250) {
        knots.push_back(2.0 * knots.back());
        slopes.push_back(slopes.back() + 1.0);
    }
    return std::make_shared<const PiecewiseLinearConvex>(std::move(knots), std::move(slopes));
}

/// chi(t) = -(gamma*)^{-1}(-t) for the gamma of adapted_gamma().  Satisfies
///   (-chi)(t) * f <= -t + gamma(f)   for all t <= 0 and f >= 0.
inline Weight young_adapted_weight(std::span<const double> f_values, std::span<const double> base_masses) {
    auto gamma = adapted_gamma(f_values, base_masses);
    auto value = [gamma](double t) { return -gamma->conjugate_inverse(std::max(-t, 0.0)); };
    auto deriv = [value](double t) {
        const double h = 1e-6 * std::max(std::abs(t), 1e-6);
        if (t + h > 0.0)
            return (value(t) - value(t - h)) / h;
        return (value(t + h) - value(t - h)) / (2.0 * h);
    };
    return Weight("adapted", {{"levels", static_cast<double>(gamma->knots().size() - 1)}},
                  WeightKind::ConvexLow, value, deriv)
        .with_young_gamma(std::move(gamma))
        .with_asymptotic_slope(0.0);
}

/// s + gamma(f) - f * (-chi)(-s), the slack in the Young inequality for an
/// adapted weight; nonnegative up to rounding.
inline double young_slack(const Weight& w, double s, double f) {
    const auto* g = w.young_gamma();
    require(g != nullptr, ErrorKind::InvalidInput, "weight carries no Young data");
    return s + (*g)(f) - f * (-w(-s));
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parses "power:p=0.5", "logiter:m=2", "qh:p=1,a=1".
inline Weight parse_weight(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    std::vector<std::pair<std::string, double>> kv;
    if (colon != std::string::npos) {
        std::size_t pos = colon + 1;
        while (pos < spec.size()) {
            const auto comma = spec.find(',', pos);
            const std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const auto eq = item.find('=');
            require(eq != std::string::npos, ErrorKind::InvalidParameter, "weight parameter needs key=value: " + item);
            try {
                std::size_t used = 0;
                const std::string num = item.substr(eq + 1);
                const double v = std::stod(num, &used);
                require(used == num.size(), ErrorKind::InvalidParameter, "bad number in weight spec: " + item);
                kv.emplace_back(item.substr(0, eq), v);
            } catch (const std::logic_error&) {
                fail(ErrorKind::InvalidParameter, "bad number in weight spec: " + item);
            }
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
    }
    auto get = [&](const char* key) {
        for (const auto& [k, v] : kv)
            if (k == key)
                return v;
        fail(ErrorKind::InvalidParameter, "weight spec '" + spec + "' lacks parameter " + key);
    };
    if (family == "power")
        return make_power(get("p"));
    if (family == "logiter") {
        const double m = get("m");
        require(m == std::floor(m), ErrorKind::InvalidParameter, "logiter needs integer m");
        return make_log_iterated(static_cast<int>(m));
    }
    if (family == "qh")
        return make_quasi_homog(get("p"), get("a"));
    fail(ErrorKind::InvalidParameter, "unknown weight family: " + family);
}

} // namespace pluri
