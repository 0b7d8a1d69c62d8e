// SPDX-License-Identifier: MIT
#pragma once

#include "pluri/error.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace pluri {

/// Uniform partition of [tmin, tmax] into n cells (n + 1 nodes).
///
/// Radial profiles are sampled on the nodes; line measures put their atoms
/// at the cell midpoints.  A profile on grid G has its Monge-Ampere measure
/// on G.dual(), whose cells are centred on the nodes of G.
struct LineGrid {
    double tmin = -600.0;
    double tmax = 600.0;
    std::size_t n = 200000;

    [[nodiscard]] double step() const { return (tmax - tmin) / static_cast<double>(n); }
    [[nodiscard]] std::size_t nodes() const { return n + 1; }
    [[nodiscard]] double node(std::size_t k) const {
        return k == n ? tmax : tmin + static_cast<double>(k) * step();
    }
    [[nodiscard]] double midpoint(std::size_t k) const {
        return tmin + (static_cast<double>(k) + 0.5) * step();
    }

    /// Grid whose cell midpoints are this grid's nodes.
    [[nodiscard]] LineGrid dual() const {
        const double h = step();
        return {tmin - 0.5 * h, tmax + 0.5 * h, n + 1};
    }

    /// Grid whose nodes are this grid's cell midpoints (inverse of dual()).
    [[nodiscard]] LineGrid primal() const {
        require(n >= 2, ErrorKind::InvalidInput, "primal grid needs at least two cells");
        const double h = step();
        return {tmin + 0.5 * h, tmax - 0.5 * h, n - 1};
    }

    void validate() const {
        require(std::isfinite(tmin) && std::isfinite(tmax) && tmin < tmax,
                ErrorKind::InvalidParameter, "grid bounds must satisfy tmin < tmax");
        require(n >= 1, ErrorKind::InvalidParameter, "grid needs at least one cell");
    }

    friend bool operator==(const LineGrid& a, const LineGrid& b) {
        const double tol = 1e-12 * std::max(1.0, std::abs(a.tmax - a.tmin));
        return a.n == b.n && std::abs(a.tmin - b.tmin) <= tol && std::abs(a.tmax - b.tmax) <= tol;
    }
};

/// Square box [-T, T]^2 sampled with n vertices per axis.
struct BoxGrid {
    double half_width = 40.0;
    std::size_t n = 201;

    [[nodiscard]] double step() const { return 2.0 * half_width / static_cast<double>(n - 1); }
    [[nodiscard]] std::size_t vertices() const { return n * n; }
    [[nodiscard]] double coord(std::size_t i) const {
        return i + 1 == n ? half_width : -half_width + static_cast<double>(i) * step();
    }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const { return i * n + j; }

    /// The 1D measure grid with one cell centred on each coordinate line.
    [[nodiscard]] LineGrid axis_cells() const {
        const double h = step();
        return {-half_width - 0.5 * h, half_width + 0.5 * h, n};
    }

    void validate() const {
        require(std::isfinite(half_width) && half_width > 0.0, ErrorKind::InvalidParameter,
                "box half-width must be positive");
        require(n >= 2, ErrorKind::InvalidParameter, "box grid needs at least two vertices per axis");
    }

    friend bool operator==(const BoxGrid& a, const BoxGrid& b) {
        return a.n == b.n && std::abs(a.half_width - b.half_width) <= 1e-12 * a.half_width;
    }
};

} // namespace pluri
