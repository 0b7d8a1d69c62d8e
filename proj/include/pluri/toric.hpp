// SPDX-License-Identifier: MIT
//
// Torus-invariant omega-psh functions on P^2 as convex functions on a box grid
// with gradients in the simplex D = {x >= 0, x1 + x2 <= 1}.
//
// The Monge-Ampere measure is the Alexandrov measure of the grid data: the
// mass of a vertex v is the area of its subgradient cell
//   {s in D : psi(w) >= psi(v) + s.(w - v) for every grid vertex w}
// divided by Leb(D) = 1/2.  Cells are clipped from D by the neighbour
// constraints and then refined against the globally most violated constraint
// at each corner.  The cells of all vertices tile D; the total is checked on
// every evaluation.
#pragma once

#include "pluri/error.hpp"
#include "pluri/grid.hpp"
#include "pluri/measures.hpp"
#include "pluri/numeric.hpp"
#include "pluri/radial/solver.hpp"
#include "pluri/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace pluri {

struct Pt {
    double x = 0.0;
    double y = 0.0;
};

/// Convex polygon with a small fixed capacity; clipping a triangle by k half-planes
/// yields at most 3 + k vertices.
class Polygon {
public:
    static constexpr std::size_t kCap = 128;

    static Polygon simplex(double scale = 1.0) {
        Polygon p;
        p.push({0.0, 0.0});
        p.push({scale, 0.0});
        p.push({0.0, scale});
        return p;
    }

    void push(Pt q) {
        require(n_ < kCap, ErrorKind::NumericalFailure, "polygon capacity exceeded");
        v_[n_++] = q;
    }
    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] bool empty() const { return n_ == 0; }
    [[nodiscard]] const Pt& operator[](std::size_t k) const { return v_[k]; }

    /// Keeps {s : a x + b y <= c}.
    void clip(double a, double b, double c) {
        if (n_ == 0)
            return;
        Polygon out;
        for (std::size_t i = 0; i < n_; ++i) {
            const Pt& p = v_[i];
            const Pt& q = v_[(i + 1) % n_];
            const double fp = a * p.x + b * p.y - c;
            const double fq = a * q.x + b * q.y - c;
            if (fp <= 0.0)
                out.push(p);
            if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
                const double lam = fp / (fp - fq);
                out.push({p.x + lam * (q.x - p.x), p.y + lam * (q.y - p.y)});
            }
        }
        *this = out;
    }

    [[nodiscard]] double area() const {
        if (n_ < 3)
            return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const Pt& p = v_[i];
            const Pt& q = v_[(i + 1) % n_];
            s += p.x * q.y - q.x * p.y;
        }
        return 0.5 * std::abs(s);
    }

private:
    std::array<Pt, kCap> v_{};
    std::size_t n_ = 0;
};

class ToricProfile {
public:
    static ToricProfile make(BoxGrid grid, std::vector<double> psi) {
        ToricProfile p(grid, std::move(psi));
        p.validate();
        return p;
    }

    static ToricProfile from_psi(BoxGrid grid, const std::function<double(double, double)>& f) {
        std::vector<double> v(grid.vertices());
        for (std::size_t i = 0; i < grid.n; ++i)
            for (std::size_t j = 0; j < grid.n; ++j)
                v[grid.index(i, j)] = f(grid.coord(i), grid.coord(j));
        return make(grid, std::move(v));
    }

    static ToricProfile reference(BoxGrid grid) { return from_psi(grid, fs_potential2); }

    [[nodiscard]] const BoxGrid& grid() const { return grid_; }
    [[nodiscard]] const std::vector<double>& psi() const { return psi_; }
    [[nodiscard]] double psi(std::size_t i, std::size_t j) const { return psi_[grid_.index(i, j)]; }
    [[nodiscard]] double phi(std::size_t idx) const {
        return psi_[idx] - fs_potential2(grid_.coord(idx / grid_.n), grid_.coord(idx % grid_.n));
    }
    [[nodiscard]] std::vector<double> phi() const {
        std::vector<double> v(psi_.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = phi(k);
        return v;
    }
    [[nodiscard]] double sup_phi() const {
        double m = -kInf;
        for (std::size_t k = 0; k < psi_.size(); ++k)
            m = std::max(m, phi(k));
        return m;
    }
    [[nodiscard]] ToricProfile shifted(double c) const {
        ToricProfile p = *this;
        for (double& v : p.psi_)
            v += c;
        return p;
    }
    [[nodiscard]] ToricProfile normalized() const { return shifted(-sup_phi()); }

    void validate() const;

private:
    ToricProfile(BoxGrid g, std::vector<double> psi) : grid_(g), psi_(std::move(psi)) {}
    friend ToricProfile unchecked_toric(BoxGrid, std::vector<double>);

    BoxGrid grid_;
    std::vector<double> psi_;
};

inline ToricProfile unchecked_toric(BoxGrid g, std::vector<double> psi) { return ToricProfile(g, std::move(psi)); }

namespace detail {

/// Row-wise discrete Legendre data: psi is convex along rows, so for a slope
/// s2 the best column of row i is the number of row slopes below s2.
class LegendreOracle {
public:
    LegendreOracle(const BoxGrid& G, const std::vector<double>& psi) : G_(G), psi_(psi) {
        const std::size_t n = G.n;
        const double h = G.step();
        slopes_.resize(n * (n - 1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j + 1 < n; ++j)
                slopes_[i * (n - 1) + j] = (psi[G.index(i, j + 1)] - psi[G.index(i, j)]) / h;
    }

    struct Best {
        double value;
        std::size_t i;
        std::size_t j;
    };

    /// max_w s.w - psi(w) over every grid vertex.  The best column moves little
    /// from row to row, so each row search walks from the previous one.
    [[nodiscard]] Best argmax(Pt s) const {
        const std::size_t n = G_.n;
        Best b{-kInf, 0, 0};
        std::size_t j0 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = slopes_.data() + i * (n - 1);
            // j0 = #{k : row[k] < s.y}
            while (j0 < n - 1 && row[j0] < s.y)
                ++j0;
            while (j0 > 0 && row[j0 - 1] >= s.y)
                --j0;
            const double base = s.x * G_.coord(i);
            const std::size_t lo = j0 > 0 ? j0 - 1 : 0;
            const std::size_t hi = std::min(j0 + 1, n - 1);
            for (std::size_t j = lo; j <= hi; ++j) {
                const double v = base + s.y * G_.coord(j) - psi_[G_.index(i, j)];
                if (v > b.value)
                    b = {v, i, j};
            }
        }
        return b;
    }

private:
    const BoxGrid& G_;
    const std::vector<double>& psi_;
    std::vector<double> slopes_;
};

/// Subgradient cell of vertex (i, j) inside scale * D.  Starts from the
/// constraints of the 5 x 5 neighbourhood and adds the globally most violated
/// constraint at a polygon corner until every corner is admissible.
/// `relax` loosens each constraint.
inline Polygon toric_cell(const BoxGrid& G, const std::vector<double>& psi, const LegendreOracle& oracle,
                          std::size_t i, std::size_t j, double scale, double relax) {
    Polygon cell = Polygon::simplex(scale);
    const double h = G.step();
    const auto n = static_cast<std::ptrdiff_t>(G.n);
    const double pv = psi[G.index(i, j)];
    const double vx = G.coord(i), vy = G.coord(j);
    auto add = [&](std::size_t a, std::size_t b) {
        const double di = static_cast<double>(static_cast<std::ptrdiff_t>(a) - static_cast<std::ptrdiff_t>(i));
        const double dj = static_cast<double>(static_cast<std::ptrdiff_t>(b) - static_cast<std::ptrdiff_t>(j));
        cell.clip(di, dj, (psi[G.index(a, b)] - pv) / h + relax);
    };
    for (std::ptrdiff_t di = -2; di <= 2; ++di)
        for (std::ptrdiff_t dj = -2; dj <= 2; ++dj) {
            const std::ptrdiff_t a = static_cast<std::ptrdiff_t>(i) + di;
            const std::ptrdiff_t b = static_cast<std::ptrdiff_t>(j) + dj;
            if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n || b >= n)
                continue;
            add(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
    const double tol = h * relax + 1e-13 * std::max(1.0, std::abs(pv));
    // corners already known to be admissible; clipping only removes corners or adds new ones
    std::vector<Pt> certified;
    auto known = [&](Pt q) {
        return std::any_of(certified.begin(), certified.end(), [&](Pt c) { return c.x == q.x && c.y == q.y; });
    };
    for (int round = 0; round < 4096 && !cell.empty(); ++round) {
        if (relax == 0.0 && cell.area() == 0.0)
            return cell;
        bool changed = false;
        for (std::size_t k = 0; k < cell.size(); ++k) {
            const Pt s = cell[k];
            if (known(s))
                continue;
            const auto best = oracle.argmax(s);
            if (best.value > s.x * vx + s.y * vy - pv + tol) {
                add(best.i, best.j);
                changed = true;
                break;
            }
            certified.push_back(s);
        }
        if (!changed)
            return cell;
    }
    if (!cell.empty())
        fail(ErrorKind::NumericalFailure, "subgradient cell refinement did not settle");
    return cell;
}

struct CellAreas {
    std::vector<double> areas;
    double total = 0.0;
};

/// Areas of the exact cells inside scale * D.  A vertex whose cell is empty
/// even with constraints loosened by `slack` is not on the convex envelope.
inline CellAreas toric_cell_areas(const BoxGrid& G, const std::vector<double>& psi, double scale,
                                  double slack = 1e-9) {
    const LegendreOracle oracle(G, psi);
    CellAreas out;
    out.areas.resize(G.vertices());
    CompensatedSum s;
    for (std::size_t i = 0; i < G.n; ++i)
        for (std::size_t j = 0; j < G.n; ++j) {
            const Polygon c = toric_cell(G, psi, oracle, i, j, scale, 0.0);
            if (c.empty() && toric_cell(G, psi, oracle, i, j, scale, slack / G.step()).empty()) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "vertex (%zu, %zu) lies above the convex envelope", i, j);
                fail(ErrorKind::PreconditionViolation, buf);
            }
            const double a = c.area();
            out.areas[G.index(i, j)] = a;
            s += a;
        }
    out.total = s.value();
    const double target = 0.5 * scale * scale;
    if (std::abs(out.total - target) > 1e-9 * target) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "subgradient cells cover %.12g of the simplex area %.12g", out.total, target);
        fail(ErrorKind::NumericalFailure, buf);
    }
    return out;
}

} // namespace detail

inline void ToricProfile::validate() const {
    grid_.validate();
    require(psi_.size() == grid_.vertices(), ErrorKind::InvalidInput, "psi length does not match box grid");
    double scale = 1.0;
    for (double v : psi_) {
        require(std::isfinite(v), ErrorKind::InvalidInput, "psi must be finite");
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-12 * scale;
    const std::size_t n = grid_.n;
    auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
        return psi_[grid_.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
    };
    const std::array<std::pair<int, int>, 4> dirs{{{1, 0}, {0, 1}, {1, 1}, {1, -1}}};
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
            for (auto [di, dj] : dirs) {
                const std::ptrdiff_t a0 = i - di, b0 = j - dj, a1 = i + di, b1 = j + dj;
                if (a0 < 0 || b0 < 0 || a1 < 0 || b1 < 0 || a0 >= static_cast<std::ptrdiff_t>(n) ||
                    b0 >= static_cast<std::ptrdiff_t>(n) || a1 >= static_cast<std::ptrdiff_t>(n) ||
                    b1 >= static_cast<std::ptrdiff_t>(n))
                    continue;
                if (at(a0, b0) - 2.0 * at(i, j) + at(a1, b1) < -tol) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf, "toric profile not convex at vertex (%td, %td)", i, j);
                    fail(ErrorKind::ModelViolation, buf);
                }
            }
    // gradients in the simplex: edge slopes along (1,0), (0,1) and (1,1) lie in [0, 1]
    const double h = grid_.step();
    const double stol = tol / h;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j)
            for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
                if (i + di >= static_cast<std::ptrdiff_t>(n) || j + dj >= static_cast<std::ptrdiff_t>(n))
                    continue;
                const double sl = (at(i + di, j + dj) - at(i, j)) / h;
                if (sl < -stol || sl > 1.0 + stol) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf, "slope %.6g at vertex (%td, %td) leaves the simplex", sl, i, j);
                    fail(ErrorKind::ModelViolation, buf);
                }
            }
}

inline void require_same_box(const ToricProfile& a, const ToricProfile& b) {
    require(a.grid() == b.grid(), ErrorKind::GridMismatch, "toric profiles live on different grids");
}

/// Vertex masses Leb(subgradient cell in D) / Leb(D).
inline PlanarMeasure alexandrov_ma(const ToricProfile& p) {
    auto cells = detail::toric_cell_areas(p.grid(), p.psi(), 1.0);
    for (double& a : cells.areas)
        a /= 0.5;
    return {p.grid(), std::move(cells.areas)};
}

struct MixedMeasures {
    PlanarMeasure sum;   ///< MA of psi_a + psi_b over 2D, divided by Leb(D); total 4
    PlanarMeasure a;
    PlanarMeasure b;
    PlanarMeasure mixed; ///< (sum - a - b) / 2; total 1
};

inline MixedMeasures mixed_measures(const ToricProfile& a, const ToricProfile& b) {
    require_same_box(a, b);
    std::vector<double> s(a.psi().size());
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = a.psi()[k] + b.psi()[k];
    auto cells = detail::toric_cell_areas(a.grid(), s, 2.0);
    for (double& x : cells.areas)
        x /= 0.5;
    MixedMeasures m{{a.grid(), std::move(cells.areas)}, alexandrov_ma(a), alexandrov_ma(b), {a.grid(), {}}};
    m.mixed.masses.resize(m.sum.masses.size());
    for (std::size_t k = 0; k < m.mixed.masses.size(); ++k) {
        const double v = 0.5 * (m.sum.masses[k] - m.a.masses[k] - m.b.masses[k]);
        if (v < -1e-9) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "mixed mass %.3g at vertex %zu is negative", v, k);
            fail(ErrorKind::NumericalFailure, buf);
        }
        m.mixed.masses[k] = v;
    }
    return m;
}

inline PlanarMeasure mixed_ma(const ToricProfile& a, const ToricProfile& b) { return mixed_measures(a, b).mixed; }

/// sum_v (-chi)(phi(v) - shift) mass(v).
inline double weighted_sum(const ToricProfile& p, const PlanarMeasure& m, const Weight& w, double shift) {
    CompensatedSum s;
    for (std::size_t k = 0; k < m.masses.size(); ++k)
        if (m.masses[k] != 0.0)
            s += -w(std::min(p.phi(k) - shift, 0.0)) * m.masses[k];
    return s.value();
}

inline double energy2(const ToricProfile& p, const Weight& w) {
    return weighted_sum(p, alexandrov_ma(p), w, p.sup_phi());
}

/// Energy without renormalisation; needs phi <= 0.
inline double raw_energy2(const ToricProfile& p, const Weight& w) {
    for (std::size_t k = 0; k < p.psi().size(); ++k)
        require(p.phi(k) <= 1e-12 * std::max(1.0, std::abs(p.psi()[k])), ErrorKind::PreconditionViolation,
                "raw energy needs phi <= 0");
    return weighted_sum(p, alexandrov_ma(p), w, 0.0);
}

struct BoundReport {
    double lhs = 0.0;
    double bound = 0.0;
    double constant = 0.0;
    double ratio = 0.0;
    bool ok = true;
};

/// C_p = 4n / (eps^n (1 - 2n eps^p)) with n = 2 and eps = (4n)^{-1/p} / 2.
inline double mixed_energy_constant(double p) {
    const double n = 2.0;
    const double eps = 0.5 * std::pow(4.0 * n, -1.0 / p);
    return 4.0 * n / (std::pow(eps, n) * (1.0 - 2.0 * n * std::pow(eps, p)));
}

/// int (-phi_0)^p d mixed(phi_1, phi_2) <= C_p max_j E_p(phi_j).
inline BoundReport mixed_energy_bound_check(const std::array<ToricProfile, 3>& ps, double pexp) {
    require(pexp > 0.0 && pexp <= 1.0, ErrorKind::InvalidParameter, "exponent must lie in (0, 1]");
    const auto w = make_power(pexp);
    const auto mixed = mixed_ma(ps[1], ps[2]);
    BoundReport r;
    r.lhs = weighted_sum(ps[0], mixed, w, 0.0);
    double emax = 0.0;
    for (const auto& p : ps)
        emax = std::max(emax, raw_energy2(p, w));
    r.constant = mixed_energy_constant(pexp);
    r.bound = r.constant * emax;
    r.ratio = emax > 0.0 ? r.lhs / emax : 0.0;
    r.ok = r.lhs <= r.bound * (1.0 + 1e-12) + 1e-15;
    return r;
}

struct ToricComparison {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double eps_grid = 0.0;
    bool ok = true;
};

/// MA(b) on {phi_a < phi_b} <= MA(a) there, up to eps_grid.
inline ToricComparison toric_comparison_check(const ToricProfile& a, const ToricProfile& b) {
    require_same_box(a, b);
    const auto ma = alexandrov_ma(a);
    const auto mb = alexandrov_ma(b);
    CompensatedSum l, r;
    for (std::size_t k = 0; k < ma.masses.size(); ++k)
        if (a.phi(k) < b.phi(k)) {
            l += mb.masses[k];
            r += ma.masses[k];
        }
    ToricComparison c;
    c.lhs = l.value();
    c.rhs = r.value();
    c.slack = c.rhs - c.lhs;
    c.eps_grid = 2.0 * std::max(ma.max_mass(), mb.max_mass());
    c.ok = c.slack >= -c.eps_grid;
    return c;
}

struct ToricFundamental {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 4.0;
    bool ok = true;
};

/// For phi_a <= phi_b <= 0: E(b) <= C^2 E(a), C = 2 or M + 1.
inline ToricFundamental toric_fundamental_check(const ToricProfile& a, const ToricProfile& b, const Weight& w) {
    require_same_box(a, b);
    for (std::size_t k = 0; k < a.psi().size(); ++k)
        require(a.psi()[k] <= b.psi()[k] + 1e-12 * std::max(1.0, std::abs(b.psi()[k])), ErrorKind::PreconditionViolation,
                "fundamental inequality needs phi_a <= phi_b");
    double c = 2.0;
    if (w.kind() == WeightKind::ConcaveHigh) {
        require(w.growth_constant().has_value(), ErrorKind::InvalidParameter, "concave weight lacks M");
        c = *w.growth_constant() + 1.0;
    }
    ToricFundamental r;
    r.constant = c * c;
    r.lhs = raw_energy2(b, w);
    r.rhs = r.constant * raw_energy2(a, w);
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-9) + 1e-12;
    return r;
}

// ---------------------------------------------------------------------------
// Random profiles
// ---------------------------------------------------------------------------

/// max( 1/2 log sum a_i e^{2 <m_i, t>}, affine pieces ) with all slopes in D and
/// the three vertices of D present.
inline ToricProfile random_toric_profile(const BoxGrid& G, std::mt19937_64& rng, int terms = 3, int pieces = 2) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto in_simplex = [&]() {
        double x = U(rng), y = U(rng);
        if (x + y > 1.0) {
            x = 1.0 - x;
            y = 1.0 - y;
        }
        return Pt{x, y};
    };
    std::vector<Pt> ms{{0, 0}, {1, 0}, {0, 1}};
    std::vector<double> ls;
    for (int i = 0; i < 3; ++i)
        ls.push_back(4.0 * (U(rng) - 0.5));
    for (int i = 0; i < terms; ++i) {
        ms.push_back(in_simplex());
        ls.push_back(6.0 * (U(rng) - 0.5));
    }
    auto smooth = [&](double x, double y) {
        double m = -kInf;
        for (std::size_t i = 0; i < ms.size(); ++i)
            m = std::max(m, 2.0 * (ms[i].x * x + ms[i].y * y) + ls[i]);
        double s = 0.0;
        for (std::size_t i = 0; i < ms.size(); ++i)
            s += std::exp(2.0 * (ms[i].x * x + ms[i].y * y) + ls[i] - m);
        return 0.5 * (m + std::log(s));
    };
    struct Piece {
        Pt m;
        double b;
    };
    std::vector<Piece> aff;
    const double T = G.half_width;
    for (int i = 0; i < pieces; ++i) {
        const Pt m = in_simplex();
        const Pt c{0.4 * T * (U(rng) - 0.5), 0.4 * T * (U(rng) - 0.5)};
        aff.push_back({m, smooth(c.x, c.y) - (m.x * c.x + m.y * c.y) + U(rng)});
    }
    std::vector<double> v(G.vertices());
    for (std::size_t i = 0; i < G.n; ++i)
        for (std::size_t j = 0; j < G.n; ++j) {
            const double x = G.coord(i), y = G.coord(j);
            double val = smooth(x, y);
            for (const auto& a : aff)
                val = std::max(val, a.m.x * x + a.m.y * y + a.b);
            v[G.index(i, j)] = val;
        }
    return ToricProfile::make(G, std::move(v));
}

// ---------------------------------------------------------------------------
// Separable solver
// ---------------------------------------------------------------------------

struct SeparableSolution {
    ToricProfile profile;
    double a = 0.5;
    PlanarMeasure expected; ///< exact Alexandrov measure of the separable profile
    double marginal_distance_1 = 0.0;
    double marginal_distance_2 = 0.0;
    double max_vertex_error = 0.0;
    double tolerance = 0.0; ///< two cells: 2 * largest factor atom
};

/// psi = a psi_1(t_1) + (1 - a) psi_2(t_2) where psi_i' is the CDF of mu_i.
///
/// The slopes fill the rectangle [0, a] x [0, 1 - a] inside D, which carries the
/// product measure with weight 2a(1 - a).  The rest of D is supported at the last
/// column (slopes s_1 > a) and the last row (s_2 > 1 - a); its exact masses are
/// part of `expected`, and the factor marginals are compared after removing it.
inline SeparableSolution solve_separable(const LineMeasure& mu1, const LineMeasure& mu2, double a = 0.5) {
    require(a > 0.0 && a < 1.0, ErrorKind::InvalidParameter, "factor split must lie in (0, 1)");
    for (const auto* mu : {&mu1, &mu2}) {
        require(mu->non_pluripolar(), ErrorKind::Unsolvable, "factor charges a pluripolar set");
        require(std::abs(mu->total() - 1.0) <= 1e-10, ErrorKind::NormalizationError, "factor mass differs from 1");
    }
    require(mu1.grid == mu2.grid, ErrorKind::GridMismatch, "factors must share a grid");
    const LineGrid& L = mu1.grid;
    require(std::abs(L.tmin + L.tmax) <= 1e-9 * (L.tmax - L.tmin), ErrorKind::InvalidInput,
            "factor grid must be symmetric about 0");
    const double h = L.step();
    const BoxGrid G{0.5 * (L.tmax - L.tmin) - 0.5 * h, L.n};
    const auto c1 = mu1.cumulative();
    const auto c2 = mu2.cumulative();
    const std::size_t n = G.n;
    auto integrate = [&](const std::vector<double>& c) {
        std::vector<double> v(n, 0.0);
        CompensatedSum acc;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            acc += G.step() * std::min(c[k], 1.0);
            v[k + 1] = acc.value();
        }
        return v;
    };
    const auto p1 = integrate(c1);
    const auto p2 = integrate(c2);
    std::vector<double> psi(G.vertices());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            psi[G.index(i, j)] = a * p1[i] + (1.0 - a) * p2[j];
    auto prof = unchecked_toric(G, std::move(psi));
    prof = prof.normalized();

    // exact masses
    std::vector<double> exp(G.vertices());
    auto strip = [](double top, double u, double v) { return top * (v - u) - 0.5 * (v * v - u * u); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double m = 2.0 * a * (1.0 - a) * mu1.atoms[i] * mu2.atoms[j];
            if (i == n - 1) {
                const double u = (1.0 - a) * (j == 0 ? 0.0 : std::min(c2[j - 1], 1.0));
                const double v = (1.0 - a) * std::min(c2[j], 1.0);
                m += 2.0 * strip(1.0 - a, u, v);
            }
            if (j == n - 1) {
                const double u = a * (i == 0 ? 0.0 : std::min(c1[i - 1], 1.0));
                const double v = a * std::min(c1[i], 1.0);
                m += 2.0 * strip(a, u, v);
            }
            exp[G.index(i, j)] = m;
        }
    SeparableSolution sol{prof, a, {G, std::move(exp)}};
    const auto got = alexandrov_ma(sol.profile);
    for (std::size_t k = 0; k < got.masses.size(); ++k)
        sol.max_vertex_error = std::max(sol.max_vertex_error, std::abs(got.masses[k] - sol.expected.masses[k]));

    // marginals of the rectangle part, rescaled to probability measures
    std::vector<double> m1(n, 0.0), m2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double rect = got.masses[G.index(i, j)] - (sol.expected.masses[G.index(i, j)] -
                                                              2.0 * a * (1.0 - a) * mu1.atoms[i] * mu2.atoms[j]);
            m1[i] += rect / (2.0 * a * (1.0 - a));
            m2[j] += rect / (2.0 * a * (1.0 - a));
        }
    for (auto& x : m1)
        x = std::max(x, 0.0);
    for (auto& x : m2)
        x = std::max(x, 0.0);
    sol.marginal_distance_1 = kolmogorov_distance(LineMeasure{L, m1}, mu1);
    sol.marginal_distance_2 = kolmogorov_distance(LineMeasure{L, m2}, mu2);
    sol.tolerance = 2.0 * std::max(mu1.max_atom(), mu2.max_atom());
    return sol;
}

} // namespace pluri
