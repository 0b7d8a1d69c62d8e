// SPDX-License-Identifier: MIT
//
// Small numerical helpers shared by the radial and toric models.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace pluri {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double accurate_sum(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs)
        s += x;
    return s.value();
}

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
    if (a == -kInf)
        return b;
    if (b == -kInf)
        return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

inline double log_sum_exp(std::span<const double> xs) {
    double m = -kInf;
    for (double x : xs)
        m = std::max(m, x);
    if (m == -kInf)
        return m;
    CompensatedSum s;
    for (double x : xs)
        s += std::exp(x - m);
    return m + std::log(s.value());
}

/// Fubini-Study potential on the log-line, 1/2 log(1 + e^{2t}).
inline double fs_potential(double t) {
    return std::max(t, 0.0) + 0.5 * std::log1p(std::exp(-2.0 * std::abs(t)));
}

/// Derivative of fs_potential, e^{2t} / (1 + e^{2t}).
inline double fs_slope(double t) {
    if (t >= 0.0)
        return 1.0 / (1.0 + std::exp(-2.0 * t));
    const double e = std::exp(2.0 * t);
    return e / (1.0 + e);
}

/// Toric Fubini-Study potential on the plane, 1/2 log(1 + e^{2x} + e^{2y}).
inline double fs_potential2(double x, double y) {
    const double m = std::max({0.0, 2.0 * x, 2.0 * y});
    return 0.5 * (m + std::log(std::exp(-m) + std::exp(2.0 * x - m) + std::exp(2.0 * y - m)));
}

inline double relative_gap(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

/// splitmix64 finalizer; used to derive per-item seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(master ^ mix64(h));
}

/// Logarithmically spaced values lo * (hi/lo)^(k/(n-1)).
inline std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double r = std::log(hi / lo);
    for (int k = 0; k < n; ++k)
        v[static_cast<std::size_t>(k)] = lo * std::exp(r * k / (n - 1));
    v.back() = hi;
    return v;
}

} // namespace pluri
