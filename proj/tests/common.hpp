// SPDX-License-Identifier: MIT
#pragma once

#include "catch_amalgamated.hpp"
#include "pluri/pluri.hpp"

#include <optional>

namespace testing {

/// Kind of the pluri::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<pluri::ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const pluri::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace testing
