// SPDX-License-Identifier: MIT
//
// JSON and CSV persistence for grids, profiles, measures and reports.
// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
#pragma once

#include "pluri/error.hpp"
#include "pluri/grid.hpp"
#include "pluri/measures.hpp"
#include "pluri/radial/capacity.hpp"
#include "pluri/radial/checks.hpp"
#include "pluri/radial/energy.hpp"
#include "pluri/radial/profile.hpp"
#include "pluri/radial/solver.hpp"
#include "pluri/toric.hpp"
#include "pluri/weights.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pluri {

using nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(SequenceVerdict, {{SequenceVerdict::Converged, "converged"},
                                               {SequenceVerdict::Diverged, "diverged"},
                                               {SequenceVerdict::Undetermined, "undetermined"}})

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CutStep, j, energy, escaping_mass, escaping_term)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CutSequence, steps, verdict)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GradientReport, value, diverges, growth_exponent, windows, partial)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FundamentalReport, lhs, rhs, constant, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DecayRow, t, capacity, inverse_bound, product)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DecayReport, rows, sup_product, bounded)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConverseReport, constant, energy, hypothesis, energy_finite)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(UniquenessReport, deviation, tolerance, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MembershipReport, js, escaping, limit, member_by_limit, member_exact, agree)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LocalityReport, max_diff, max_nested_diff, retained_monotone)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ComparisonReport, lhs, rhs, slack, eps_grid, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConvergenceReport, js, plain, weighted, eps_grid, locality, plain_monotone,
                                   weighted_monotone, converged)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DominationReport, max_ratio, ratios, fit_a, fit_alpha, envelope_a, samples,
                                   unbounded)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StabilityReport, eps, distances, energies, eps_grid, monotone, below_grid, bounded)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundReport, lhs, bound, constant, ratio, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ToricComparison, lhs, rhs, slack, eps_grid, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ToricFundamental, lhs, rhs, constant, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckOutcome, name, pass, worst_slack, witness_t, witness_eps)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ValidationReport, checks)

/// Replaces non-finite floats by their string spelling, recursively.
inline void encode_nonfinite(json& j) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isnan(v))
            j = "nan";
        else if (std::isinf(v))
            j = v > 0 ? "inf" : "-inf";
    } else if (j.is_array() || j.is_object()) {
        for (auto& x : j)
            encode_nonfinite(x);
    }
}

template <class T>
json report_json(const T& r) {
    json j = r;
    encode_nonfinite(j);
    return j;
}

namespace detail {

inline double number(const json& j, const char* what) {
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "-inf" || s == "nan")
            return s == "nan" ? std::nan("") : (s == "inf" ? kInf : -kInf);
    }
    fail(ErrorKind::InvalidInput, std::string("expected a number for ") + what);
}

inline double parse_number(const std::string& s, const char* what) {
    if (s == "inf")
        return kInf;
    if (s == "-inf")
        return -kInf;
    if (s == "nan")
        return std::nan("");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        fail(ErrorKind::InvalidInput, std::string("bad number '") + s + "' for " + what);
    return v;
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array())
        fail(ErrorKind::InvalidInput, std::string("expected an array for ") + what);
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& x : j)
        v.push_back(number(x, what));
    return v;
}

inline std::size_t count(const json& j, const char* what) {
    const double v = number(j, what);
    if (!(v >= 1.0) || v != std::floor(v))
        fail(ErrorKind::InvalidInput, std::string("expected a positive integer for ") + what);
    return static_cast<std::size_t>(v);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        fail(ErrorKind::Io, "read failed on " + path.string());
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::Io, "cannot write " + path.string());
    out << text;
    out.flush();
    if (!out)
        fail(ErrorKind::Io, "write failed on " + path.string());
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Grids, profiles, measures, weights
// ---------------------------------------------------------------------------

inline json grid_json(const LineGrid& g) { return {{"tmin", g.tmin}, {"tmax", g.tmax}, {"n", g.n}}; }

inline LineGrid grid_from_json(const json& j) {
    LineGrid g{detail::number(detail::field(j, "tmin"), "tmin"), detail::number(detail::field(j, "tmax"), "tmax"),
               detail::count(detail::field(j, "n"), "n")};
    g.validate();
    return g;
}

inline json box_json(const BoxGrid& g) { return {{"tmin", -g.half_width}, {"tmax", g.half_width}, {"n", g.n}}; }

inline BoxGrid box_from_json(const json& j) {
    const double lo = detail::number(detail::field(j, "tmin"), "tmin");
    const double hi = detail::number(detail::field(j, "tmax"), "tmax");
    if (std::abs(lo + hi) > 1e-12 * std::max(1.0, hi))
        fail(ErrorKind::InvalidInput, "box grid must be symmetric about 0");
    BoxGrid g{hi, detail::count(detail::field(j, "n"), "n")};
    g.validate();
    return g;
}

inline json profile_json(const RadialProfile& p) {
    json j{{"grid", grid_json(p.grid())}, {"psi", p.psi()}, {"slope_neg", p.slope_neg()}, {"slope_pos", p.slope_pos()}};
    if (p.tail_flag_neg() || p.tail_flag_pos())
        j["unbounded_tails"] = {p.tail_flag_neg(), p.tail_flag_pos()};
    return j;
}

inline RadialProfile profile_from_json(const json& j) {
    auto p = RadialProfile::make(grid_from_json(detail::field(j, "grid")), detail::numbers(detail::field(j, "psi"), "psi"),
                                 detail::number(detail::field(j, "slope_neg"), "slope_neg"),
                                 detail::number(detail::field(j, "slope_pos"), "slope_pos"));
    if (j.contains("unbounded_tails")) {
        const auto& t = j.at("unbounded_tails");
        if (!t.is_array() || t.size() != 2 || !t[0].is_boolean() || !t[1].is_boolean())
            fail(ErrorKind::InvalidInput, "unbounded_tails must be a pair of booleans");
        p = p.with_unbounded_tails(t[0].get<bool>(), t[1].get<bool>());
    }
    return p;
}

inline json toric_json(const ToricProfile& p) { return {{"grid2", box_json(p.grid())}, {"psi", p.psi()}}; }

inline ToricProfile toric_from_json(const json& j) {
    return ToricProfile::make(box_from_json(detail::field(j, "grid2")), detail::numbers(detail::field(j, "psi"), "psi"));
}

inline json measure_json(const LineMeasure& m) {
    return {{"grid", grid_json(m.grid)},
            {"atoms", m.atoms},
            {"charge_neg_inf", m.charge_neg_inf},
            {"charge_pos_inf", m.charge_pos_inf}};
}

inline LineMeasure measure_from_json(const json& j) {
    const double neg = j.contains("charge_neg_inf") ? detail::number(j.at("charge_neg_inf"), "charge_neg_inf") : 0.0;
    const double pos = j.contains("charge_pos_inf") ? detail::number(j.at("charge_pos_inf"), "charge_pos_inf") : 0.0;
    return LineMeasure::make(grid_from_json(detail::field(j, "grid")), detail::numbers(detail::field(j, "atoms"), "atoms"),
                             neg, pos);
}

inline json weight_json(const Weight& w) {
    json j{{"label", w.label()}, {"family", w.family()}, {"kind", to_string(w.kind())}};
    for (const auto& [k, v] : w.params())
        j["params"][k] = v;
    if (w.growth_constant())
        j["growth_constant"] = *w.growth_constant();
    return j;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string fmt_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Six significant digits, for labels.
inline std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// Header comment lines carry grid and charges; rows are (k, t_lo, t_hi, mass).
inline std::string measure_csv(const LineMeasure& m) {
    std::string out = "# tmin=" + fmt_double(m.grid.tmin) + " tmax=" + fmt_double(m.grid.tmax) +
                      " n=" + std::to_string(m.grid.n) + "\n# charge_neg_inf=" + fmt_double(m.charge_neg_inf) +
                      " charge_pos_inf=" + fmt_double(m.charge_pos_inf) + "\nk,t_lo,t_hi,mass\n";
    for (std::size_t k = 0; k < m.atoms.size(); ++k)
        out += std::to_string(k) + "," + fmt_double(m.grid.node(k)) + "," + fmt_double(m.grid.node(k + 1)) + "," +
               fmt_double(m.atoms[k]) + "\n";
    return out;
}

inline LineMeasure measure_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    double tmin = std::nan(""), tmax = std::nan(""), neg = 0.0, pos = 0.0;
    std::size_t n = 0;
    std::vector<double> atoms;
    auto kv = [&](const std::string& s) {
        std::istringstream ls(s.substr(1));
        std::string tok;
        while (ls >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                continue;
            const std::string key = tok.substr(0, eq);
            const double v = detail::parse_number(tok.substr(eq + 1), key.c_str());
            if (key == "tmin")
                tmin = v;
            else if (key == "tmax")
                tmax = v;
            else if (key == "n")
                n = static_cast<std::size_t>(v);
            else if (key == "charge_neg_inf")
                neg = v;
            else if (key == "charge_pos_inf")
                pos = v;
        }
    };
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            kv(line);
            continue;
        }
        if (!header) {
            header = true;
            continue;
        }
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ','))
            cols.push_back(c);
        if (cols.size() != 4)
            fail(ErrorKind::InvalidInput, "measure CSV rows need 4 columns: " + line);
        const double v = detail::parse_number(cols[3], "mass");
        atoms.push_back(v);
    }
    if (!std::isfinite(tmin) || !std::isfinite(tmax) || n == 0)
        fail(ErrorKind::InvalidInput, "measure CSV lacks its grid header");
    return LineMeasure::make(LineGrid{tmin, tmax, n}, std::move(atoms), neg, pos);
}

inline std::string planar_csv(const PlanarMeasure& m) {
    std::string out = "i,j,t1,t2,mass\n";
    for (std::size_t i = 0; i < m.grid.n; ++i)
        for (std::size_t j = 0; j < m.grid.n; ++j)
            out += std::to_string(i) + "," + std::to_string(j) + "," + fmt_double(m.grid.coord(i)) + "," +
                   fmt_double(m.grid.coord(j)) + "," + fmt_double(m.at(i, j)) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Path helpers
// ---------------------------------------------------------------------------

inline RadialProfile load_profile(const std::filesystem::path& p) { return profile_from_json(parse_json(read_file(p))); }

inline void save_profile(const std::filesystem::path& p, const RadialProfile& prof) {
    write_file(p, profile_json(prof).dump(1) + "\n");
}

inline ToricProfile load_toric(const std::filesystem::path& p) { return toric_from_json(parse_json(read_file(p))); }

/// JSON by default; files ending in .csv use the measure CSV layout.
inline LineMeasure load_measure(const std::filesystem::path& p) {
    const auto text = read_file(p);
    if (p.extension() == ".csv")
        return measure_from_csv(text);
    return measure_from_json(parse_json(text));
}

inline void save_measure(const std::filesystem::path& p, const LineMeasure& m) {
    if (p.extension() == ".csv")
        write_file(p, measure_csv(m));
    else
        write_file(p, measure_json(m).dump(1) + "\n");
}

} // namespace pluri
