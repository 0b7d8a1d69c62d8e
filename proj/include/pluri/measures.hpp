// SPDX-License-Identifier: MIT
//
// Positive measures on the extended log-line and on the planar box grid.
#pragma once

#include "pluri/error.hpp"
#include "pluri/grid.hpp"
#include "pluri/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace pluri {

/// Atoms at the cell midpoints of a LineGrid plus explicit charges at -inf and +inf.
struct LineMeasure {
    LineGrid grid;
    std::vector<double> atoms;
    double charge_neg_inf = 0.0;
    double charge_pos_inf = 0.0;

    static LineMeasure make(LineGrid grid, std::vector<double> atoms, double neg = 0.0, double pos = 0.0) {
        LineMeasure m{grid, std::move(atoms), neg, pos};
        m.validate();
        return m;
    }

    /// Cells receive F(right edge) - F(left edge) of a continuous CDF F.
    static LineMeasure from_cdf(LineGrid grid, const std::function<double(double)>& cdf_fn, double neg = 0.0,
                                double pos = 0.0) {
        std::vector<double> atoms(grid.n);
        double left = cdf_fn(grid.tmin);
        for (std::size_t k = 0; k < grid.n; ++k) {
            const double right = cdf_fn(grid.node(k + 1));
            atoms[k] = std::max(0.0, right - left);
            left = right;
        }
        return make(grid, std::move(atoms), neg, pos);
    }

    void validate() const {
        grid.validate();
        require(atoms.size() == grid.n, ErrorKind::InvalidInput, "atom count does not match grid");
        for (double a : atoms)
            require(std::isfinite(a) && a >= 0.0, ErrorKind::InvalidInput, "atoms must be finite and nonnegative");
        require(std::isfinite(charge_neg_inf) && charge_neg_inf >= 0.0 && std::isfinite(charge_pos_inf) &&
                    charge_pos_inf >= 0.0,
                ErrorKind::InvalidInput, "charges must be finite and nonnegative");
    }

    [[nodiscard]] double interior_mass() const { return accurate_sum(atoms); }
    [[nodiscard]] double total() const {
        CompensatedSum s;
        for (double a : atoms)
            s += a;
        s += charge_neg_inf;
        s += charge_pos_inf;
        return s.value();
    }
    [[nodiscard]] bool non_pluripolar() const { return charge_neg_inf == 0.0 && charge_pos_inf == 0.0; }
    [[nodiscard]] double max_atom() const {
        return atoms.empty() ? 0.0 : *std::max_element(atoms.begin(), atoms.end());
    }

    /// cum[k] = charge_neg_inf + sum of atoms[0..k].
    [[nodiscard]] std::vector<double> cumulative() const {
        std::vector<double> out(atoms.size());
        CompensatedSum s;
        s += charge_neg_inf;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            s += atoms[k];
            out[k] = s.value();
        }
        return out;
    }
};

/// charge_neg_inf + sum of atoms at midpoints <= t.
inline double cdf(const LineMeasure& m, double t) {
    require(t >= m.grid.tmin && t <= m.grid.tmax, ErrorKind::OutOfRange, "cdf argument outside grid");
    const double h = m.grid.step();
    // midpoint k is tmin + (k + 1/2) h; count those <= t
    const double pos = (t - m.grid.tmin) / h - 0.5;
    std::size_t count = pos < 0.0 ? 0 : static_cast<std::size_t>(std::floor(pos)) + 1;
    count = std::min(count, m.atoms.size());
    // guard the floor against rounding at exact midpoints
    while (count < m.atoms.size() && m.grid.midpoint(count) <= t)
        ++count;
    while (count > 0 && m.grid.midpoint(count - 1) > t)
        --count;
    CompensatedSum s;
    s += m.charge_neg_inf;
    for (std::size_t k = 0; k < count; ++k)
        s += m.atoms[k];
    return s.value();
}

/// max( sup_t |F_a(t) - F_b(t)|, |total_a - total_b| ); F includes the -inf charge.
inline double kolmogorov_distance(const LineMeasure& a, const LineMeasure& b) {
    require(a.grid == b.grid, ErrorKind::InvalidInput, "kolmogorov distance needs measures on the same grid");
    double best = std::abs(a.charge_neg_inf - b.charge_neg_inf);
    CompensatedSum d;
    d += a.charge_neg_inf;
    d += -b.charge_neg_inf;
    for (std::size_t k = 0; k < a.atoms.size(); ++k) {
        d += a.atoms[k];
        d += -b.atoms[k];
        best = std::max(best, std::abs(d.value()));
    }
    d += a.charge_pos_inf;
    d += -b.charge_pos_inf;
    return std::max(best, std::abs(d.value()));
}

/// sup_t |F(t) - step CDF of m| for a continuous nondecreasing F, exact for the
/// step function: the supremum sits at the jumps.
inline double cdf_distance_to(const LineMeasure& m, const std::function<double(double)>& exact) {
    double best = 0.0;
    double prev = m.charge_neg_inf;
    best = std::max(best, std::abs(exact(m.grid.tmin) - prev));
    CompensatedSum s;
    s += m.charge_neg_inf;
    for (std::size_t k = 0; k < m.atoms.size(); ++k) {
        const double f = exact(m.grid.midpoint(k));
        s += m.atoms[k];
        const double next = s.value();
        best = std::max({best, std::abs(f - prev), std::abs(f - next)});
        prev = next;
    }
    best = std::max(best, std::abs(exact(m.grid.tmax) - prev));
    return best;
}

struct ScaledMeasure {
    LineMeasure measure;
    double c = 1.0;
};

/// c_j min(f, j) m, with c_j restoring the total mass of f m.
inline ScaledMeasure scale_min_density(const LineMeasure& m, std::span<const double> f, double j) {
    require(m.non_pluripolar(), ErrorKind::PreconditionViolation, "density truncation needs a non-pluripolar base");
    require(f.size() == m.atoms.size(), ErrorKind::InvalidInput, "density length does not match grid");
    require(j > 0.0, ErrorKind::InvalidParameter, "truncation level must be positive");
    std::vector<double> capped(m.atoms.size());
    CompensatedSum full;
    CompensatedSum cut;
    for (std::size_t k = 0; k < capped.size(); ++k) {
        require(f[k] >= 0.0 && !std::isnan(f[k]), ErrorKind::InvalidInput, "density must be nonnegative");
        full += f[k] * m.atoms[k];
        capped[k] = std::min(f[k], j) * m.atoms[k];
        cut += capped[k];
    }
    require(cut.value() > 0.0, ErrorKind::DegenerateTruncation, "truncated density has zero mass");
    const double c = full.value() / cut.value();
    for (double& x : capped)
        x *= c;
    return {LineMeasure::make(m.grid, std::move(capped)), c};
}

/// Pointwise product of a cellwise density with a non-pluripolar base.
inline LineMeasure with_density(const LineMeasure& m, std::span<const double> f) {
    require(f.size() == m.atoms.size(), ErrorKind::InvalidInput, "density length does not match grid");
    std::vector<double> out(m.atoms.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = f[k] * m.atoms[k];
    return LineMeasure::make(m.grid, std::move(out));
}

/// Vertex masses on a box grid, already divided by Leb(simplex) = 1/2.
struct PlanarMeasure {
    BoxGrid grid;
    std::vector<double> masses;

    [[nodiscard]] double total_norm() const { return accurate_sum(masses); }
    [[nodiscard]] double max_mass() const {
        return masses.empty() ? 0.0 : *std::max_element(masses.begin(), masses.end());
    }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return masses[grid.index(i, j)]; }
};

} // namespace pluri
