// SPDX-License-Identifier: MIT
//
// Verification suites, example tables and the command implementations behind
// the pluri CLI.
#pragma once

#include "pluri/io.hpp"
#include "pluri/radial/capacity.hpp"
#include "pluri/radial/checks.hpp"
#include "pluri/radial/constructions.hpp"
#include "pluri/radial/energy.hpp"
#include "pluri/radial/profile.hpp"
#include "pluri/radial/solver.hpp"
#include "pluri/toric.hpp"
#include "pluri/weights.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace pluri {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct SuiteConfig {
    std::uint64_t seed = 20240611;
    LineGrid grid{};                 ///< radial grid
    BoxGrid grid2{40.0, 201};        ///< toric grid for single evaluations
    BoxGrid suite_grid2{40.0, 101};  ///< toric grid for randomized suites
    std::vector<std::string> weights{"power:p=0.5", "logiter:m=1", "power:p=2", "qh:p=1,a=0.5"};
    std::map<std::string, int> counts{
        {"radial_profiles", 500},  {"toric_profiles", 100},   {"comparison_pairs_1d", 200},
        {"comparison_pairs_2d", 50}, {"nested_pairs_1d", 500}, {"nested_pairs_2d", 100},
        {"membership_profiles", 200}, {"engineered_lelong", 20}, {"solver_targets", 100},
        {"uniqueness_targets", 10}, {"uniqueness_trials", 5},   {"capacity_members", 20},
        {"test_functions", 50},    {"polarization_pairs", 50}, {"stability_profiles", 20},
        {"young_pairs", 1000},     {"threads", 0}};
    double eps_factor = 1.0; ///< multiplies every eps_grid allowance
    double mass_tol = 1e-12;
    double mass_tol2 = 1e-9;
    double polar_tol = 1e-9;
    std::string out = "results";

    [[nodiscard]] int count(const std::string& k) const {
        const auto it = counts.find(k);
        require(it != counts.end(), ErrorKind::InvalidParameter, "unknown count: " + k);
        return it->second;
    }

    void validate() const {
        grid.validate();
        grid2.validate();
        suite_grid2.validate();
        for (const auto& [k, v] : counts)
            require(v >= 1 || (k == "threads" && v == 0), ErrorKind::InvalidParameter, "count " + k + " must be >= 1");
        require(eps_factor >= 0.0 && mass_tol > 0.0 && mass_tol2 > 0.0 && polar_tol > 0.0, ErrorKind::InvalidParameter,
                "tolerances must be positive");
        require(!weights.empty(), ErrorKind::InvalidParameter, "weight list is empty");
        for (const auto& w : weights)
            (void)parse_weight(w);
    }

    /// Applies one key=value setting.
    void set(const std::string& key, const std::string& value) {
        auto num = [&] { return detail::parse_number(value, key.c_str()); };
        auto split = [](const std::string& s, char sep) {
            std::vector<std::string> out;
            std::string item;
            std::istringstream in(s);
            while (std::getline(in, item, sep))
                if (!item.empty())
                    out.push_back(item);
            return out;
        };
        if (key == "seed") {
            try {
                std::size_t used = 0;
                seed = std::stoull(value, &used, 0);
                require(used == value.size(), ErrorKind::InvalidParameter, "bad seed: " + value);
            } catch (const std::logic_error&) {
                fail(ErrorKind::InvalidParameter, "bad seed: " + value);
            }
        } else if (key == "grid") {
            const auto v = split(value, ',');
            require(v.size() == 3, ErrorKind::InvalidParameter, "grid needs tmin,tmax,n");
            grid = LineGrid{detail::parse_number(v[0], "tmin"), detail::parse_number(v[1], "tmax"),
                            static_cast<std::size_t>(detail::parse_number(v[2], "n"))};
        } else if (key == "grid2" || key == "suite_grid2") {
            const auto v = split(value, ',');
            require(v.size() == 2, ErrorKind::InvalidParameter, key + " needs half_width,n");
            BoxGrid g{detail::parse_number(v[0], "half_width"), static_cast<std::size_t>(detail::parse_number(v[1], "n"))};
            (key == "grid2" ? grid2 : suite_grid2) = g;
        } else if (key == "weights") {
            weights = split(value, ';');
        } else if (key == "eps_factor") {
            eps_factor = num();
        } else if (key == "mass_tol") {
            mass_tol = num();
        } else if (key == "mass_tol2") {
            mass_tol2 = num();
        } else if (key == "polar_tol") {
            polar_tol = num();
        } else if (key == "out") {
            out = value;
        } else if (counts.count(key)) {
            const double v = num();
            require(v == std::floor(v) && std::abs(v) < 1e9, ErrorKind::InvalidParameter, key + " must be an integer");
            counts[key] = static_cast<int>(v);
        } else {
            fail(ErrorKind::InvalidParameter, "unknown config key: " + key);
        }
    }

    /// Flat key=value lines; '#' starts a comment.
    void load_text(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            require(eq != std::string::npos, ErrorKind::InvalidParameter,
                    "config line " + std::to_string(lineno) + " is not key=value");
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    [[nodiscard]] json to_json() const {
        json j{{"seed", seed},
               {"grid", grid_json(grid)},
               {"grid2", box_json(grid2)},
               {"suite_grid2", box_json(suite_grid2)},
               {"weights", weights},
               {"eps_factor", eps_factor},
               {"mass_tol", mass_tol},
               {"mass_tol2", mass_tol2},
               {"polar_tol", polar_tol},
               {"out", out}};
        for (const auto& [k, v] : counts)
            j["counts"][k] = v;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct Record {
    std::string name;
    std::string anchor; ///< statement the record exercises, or "plumbing"
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;
    std::string note;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Record, name, anchor, lhs, rhs, slack, pass, note)

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Record> records;
    double seconds = 0.0;

    [[nodiscard]] bool pass() const {
        return !records.empty() && std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
    }
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    json environment;
    double wall_clock = 0.0;

    [[nodiscard]] bool pass() const {
        return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass(); });
    }

    [[nodiscard]] json to_json() const {
        json j;
        for (const auto& c : criteria) {
            json cj{{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"seconds", c.seconds}};
            for (const auto& r : c.records)
                cj["records"].push_back(r);
            j["criteria"].push_back(cj);
        }
        j["pass"] = pass();
        j["environment"] = environment;
        j["wall_clock"] = wall_clock;
        encode_nonfinite(j);
        return j;
    }
};

inline json environment_fingerprint(const SuiteConfig& cfg) {
    json e;
#if defined(__clang__)
    e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    e["compiler"] = std::string("gcc ") + __VERSION__;
#else
    e["compiler"] = "unknown";
#endif
    e["cplusplus"] = static_cast<long>(__cplusplus);
#if defined(__linux__)
    e["platform"] = "linux";
#elif defined(__APPLE__)
    e["platform"] = "darwin";
#else
    e["platform"] = "other";
#endif
    e["hardware_threads"] = std::thread::hardware_concurrency();
    e["config"] = cfg.to_json();
    return e;
}

// ---------------------------------------------------------------------------
// Work pool
// ---------------------------------------------------------------------------

/// Evaluates f(0..n-1) on a pool of threads; results are stored by index, so
/// the output does not depend on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f, int threads = 0) {
    std::vector<T> out(n);
    unsigned hw = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    hw = static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(n, 1)));
    if (hw <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < hw; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    std::lock_guard lk(mu);
                    if (!err)
                        err = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
    return out;
}

// ---------------------------------------------------------------------------
// Suite helpers
// ---------------------------------------------------------------------------

namespace suite {

inline std::mt19937_64 rng_for(const SuiteConfig& cfg, const std::string& item) {
    return std::mt19937_64(derive_seed(cfg.seed, item));
}

/// Worst-case aggregate of many (lhs, rhs, slack, pass) samples.
class Tally {
public:
    Tally(std::string name, std::string anchor) {
        rec_.name = std::move(name);
        rec_.anchor = std::move(anchor);
        rec_.slack = kInf;
    }

    void add(double lhs, double rhs, double slack, bool pass) {
        ++n_;
        if (!pass)
            ++failed_;
        if (slack < rec_.slack || (first_ && std::isnan(slack))) {
            rec_.lhs = lhs;
            rec_.rhs = rhs;
            rec_.slack = slack;
        }
        first_ = false;
    }

    [[nodiscard]] Record done(std::string extra = {}) const {
        Record r = rec_;
        r.pass = n_ > 0 && failed_ == 0;
        r.note = std::to_string(n_) + " samples, " + std::to_string(failed_) + " failed";
        if (!extra.empty())
            r.note += "; " + extra;
        return r;
    }

private:
    Record rec_;
    std::size_t n_ = 0;
    std::size_t failed_ = 0;
    bool first_ = true;
};

inline Record single(std::string name, std::string anchor, double lhs, double rhs, bool pass, std::string note = {}) {
    Record r{std::move(name), std::move(anchor), lhs, rhs, rhs - lhs, pass, std::move(note)};
    return r;
}

inline Record failure(std::string name, std::string anchor, const std::exception& e) {
    return Record{std::move(name), std::move(anchor), 0.0, 0.0, -kInf, false, std::string("error: ") + e.what()};
}

/// Random radial member (no Lelong numbers) with sup phi = 0.
inline RadialProfile random_member(const LineGrid& G, std::mt19937_64& rng) {
    return normalized(random_profile(G, rng));
}

/// lam psi_b + (1 - lam) psi_c - C with C making phi_a <= phi_b.
inline RadialProfile nested_below(const RadialProfile& b, const RadialProfile& c, double lam) {
    const auto& G = b.grid();
    double shift = -kInf;
    for (std::size_t k = 0; k < G.nodes(); ++k)
        shift = std::max(shift, (1.0 - lam) * (c.phi(k) - b.phi(k)));
    std::vector<double> v(G.nodes());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = lam * b.psi(k) + (1.0 - lam) * c.psi(k) - shift;
    return RadialProfile::make(G, std::move(v), lam * b.slope_neg() + (1.0 - lam) * c.slope_neg(),
                               lam * b.slope_pos() + (1.0 - lam) * c.slope_pos());
}

inline ToricProfile nested_below(const ToricProfile& b, const ToricProfile& c, double lam) {
    double shift = -kInf;
    for (std::size_t k = 0; k < b.psi().size(); ++k)
        shift = std::max(shift, (1.0 - lam) * (c.phi(k) - b.phi(k)));
    std::vector<double> v(b.psi().size());
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = lam * b.psi()[k] + (1.0 - lam) * c.psi()[k] - shift;
    return ToricProfile::make(b.grid(), std::move(v));
}

/// psi = max(g - c, chord of g - c over [t_k1, t_k2]): every bit of its mass sits at
/// level -c, exactly like that of g - c below it.
inline std::pair<RadialProfile, RadialProfile> equal_energy_pair(const LineGrid& G, double c, std::size_t k1,
                                                                 std::size_t k2) {
    std::vector<double> lo(G.nodes()), hi(G.nodes());
    const double t1 = G.node(k1), t2 = G.node(k2);
    const double y1 = fs_potential(t1) - c, y2 = fs_potential(t2) - c;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        const double t = G.node(k);
        lo[k] = fs_potential(t) - c;
        hi[k] = (k > k1 && k < k2) ? y1 + (y2 - y1) * (t - t1) / (t2 - t1) : lo[k];
    }
    return {RadialProfile::make(G, std::move(lo), 0.0, 1.0), RadialProfile::make(G, std::move(hi), 0.0, 1.0)};
}

/// Random non-pluripolar target: MA of a random profile mixed with a few
/// interior atoms.
inline LineMeasure random_target(const LineGrid& cells, std::mt19937_64& rng, bool atoms) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const auto prof = random_profile(cells.primal(), rng);
    auto m = ma_measure(prof);
    if (atoms) {
        const double w = 0.05 + 0.4 * U(rng);
        for (double& a : m.atoms)
            a *= 1.0 - w;
        const int k = 1 + static_cast<int>(U(rng) * 3.0);
        const std::size_t mid = m.atoms.size() / 2;
        for (int i = 0; i < k; ++i) {
            const auto pos = static_cast<std::size_t>(static_cast<double>(mid) + (U(rng) - 0.5) * 0.2 * static_cast<double>(m.atoms.size()));
            m.atoms[pos] += w / k;
        }
    }
    const double t = m.total();
    for (double& a : m.atoms)
        a /= t;
    return m;
}

inline Weight first_of_kind(const SuiteConfig& cfg, WeightKind k) {
    for (const auto& s : cfg.weights) {
        auto w = parse_weight(s);
        if (w.kind() == k)
            return w;
    }
    return k == WeightKind::ConvexLow ? make_power(0.5) : make_power(2.0);
}

inline double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace suite

// ---------------------------------------------------------------------------
// Acceptance suites
// ---------------------------------------------------------------------------

inline constexpr int kCriteria = 12;

inline const char* criterion_title(int id) {
    static const char* titles[kCriteria] = {
        "mass normalization",
        "comparison principle",
        "fundamental inequality constants",
        "canonical approximation",
        "inverse problem solver",
        "slowly singular full-mass profile",
        "attenuated Lelong singularity",
        "capacity decay and domination",
        "quasi-homogeneous sandwich and derivative bound",
        "toric polarization",
        "stability under reference perturbation",
        "Young-adapted weight",
    };
    return id >= 1 && id <= kCriteria ? titles[id - 1] : "?";
}

namespace suite {

inline std::vector<Record> mass_normalization(const SuiteConfig& cfg) {
    const int n1 = cfg.count("radial_profiles");
    auto radial = parallel_map<std::pair<double, std::string>>(
        static_cast<std::size_t>(n1),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "mass/radial/" + std::to_string(i));
            RandomProfileOptions o;
            if (i % 5 == 0) {
                std::uniform_real_distribution<double> U(0.0, 1.0);
                o.lelong_zero = 0.5 * U(rng);
                o.lelong_inf = 0.5 * U(rng);
            }
            const auto p = random_profile(cfg.grid, rng, o);
            const auto m = ma_measure(p);
            return std::pair{m.interior_mass() + p.lelong_zero() + p.lelong_inf(), std::string()};
        },
        cfg.count("threads"));
    Tally t1("radial total mass", "full Monge-Ampere mass equals the volume");
    for (const auto& [v, _] : radial)
        t1.add(v, 1.0, cfg.mass_tol - std::abs(v - 1.0), std::abs(v - 1.0) <= cfg.mass_tol);
    const int n2 = cfg.count("toric_profiles");
    auto toric = parallel_map<double>(
        static_cast<std::size_t>(n2),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "mass/toric/" + std::to_string(i));
            const auto p = random_toric_profile(cfg.suite_grid2, rng, 3, static_cast<int>(i % 3));
            return alexandrov_ma(p).total_norm();
        },
        cfg.count("threads"));
    Tally t2("toric total mass", "full Monge-Ampere mass equals the volume");
    for (double v : toric)
        t2.add(v, 1.0, cfg.mass_tol2 - std::abs(v - 1.0), std::abs(v - 1.0) <= cfg.mass_tol2);
    return {t1.done(), t2.done()};
}

inline std::vector<Record> comparison(const SuiteConfig& cfg) {
    using R = std::array<double, 3>;
    auto one = parallel_map<R>(
        static_cast<std::size_t>(cfg.count("comparison_pairs_1d")),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "comparison/1d/" + std::to_string(i));
            const auto a = random_profile(cfg.grid, rng);
            const auto b = random_profile(cfg.grid, rng);
            const auto c = comparison_check(a, b);
            return R{c.lhs, c.rhs, c.eps_grid};
        },
        cfg.count("threads"));
    Tally t1("comparison 1d", "comparison principle on the maximal domain");
    for (const auto& [l, r, e] : one)
        t1.add(l, r, r - l + cfg.eps_factor * e, r - l >= -cfg.eps_factor * e);
    auto two = parallel_map<R>(
        static_cast<std::size_t>(cfg.count("comparison_pairs_2d")),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "comparison/2d/" + std::to_string(i));
            const auto a = random_toric_profile(cfg.suite_grid2, rng);
            const auto b = random_toric_profile(cfg.suite_grid2, rng);
            const auto c = toric_comparison_check(a, b);
            return R{c.lhs, c.rhs, c.eps_grid};
        },
        cfg.count("threads"));
    Tally t2("comparison 2d", "comparison principle on the maximal domain");
    for (const auto& [l, r, e] : two)
        t2.add(l, r, r - l + cfg.eps_factor * e, r - l >= -cfg.eps_factor * e);
    return {t1.done(), t2.done()};
}

inline std::vector<Record> fundamental(const SuiteConfig& cfg) {
    std::vector<Weight> ws;
    for (const auto& s : cfg.weights)
        ws.push_back(parse_weight(s));
    const std::size_t n1 = static_cast<std::size_t>(cfg.count("nested_pairs_1d"));
    using Row = std::vector<FundamentalReport>;
    auto one = parallel_map<Row>(
        n1,
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "fundamental/1d/" + std::to_string(i));
            std::uniform_real_distribution<double> U(0.0, 1.0);
            const auto b = random_member(cfg.grid, rng);
            const auto c = random_profile(cfg.grid, rng);
            const auto a = nested_below(b, c, 0.05 + 0.9 * U(rng));
            Row r;
            for (const auto& w : ws)
                r.push_back(fundamental_inequality_check(a, b, w));
            return r;
        },
        cfg.count("threads"));
    std::vector<Record> out;
    double max_ratio = 0.0;
    for (std::size_t k = 0; k < ws.size(); ++k) {
        Tally t("fundamental 1d " + ws[k].label(),
                ws[k].kind() == WeightKind::ConvexLow ? "energy of the larger function: constant 2^n"
                                                      : "energy of the larger function: constant (M+1)^n");
        for (const auto& row : one) {
            const auto& f = row[k];
            t.add(f.lhs, f.rhs, f.rhs - f.lhs, f.ok);
            if (f.rhs > 0.0)
                max_ratio = std::max(max_ratio, f.lhs * f.constant / f.rhs);
        }
        out.push_back(t.done());
    }
    const std::vector<Weight> ws2{first_of_kind(cfg, WeightKind::ConvexLow), first_of_kind(cfg, WeightKind::ConcaveHigh)};
    auto two = parallel_map<std::vector<ToricFundamental>>(
        static_cast<std::size_t>(cfg.count("nested_pairs_2d")),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "fundamental/2d/" + std::to_string(i));
            std::uniform_real_distribution<double> U(0.0, 1.0);
            const auto b = random_toric_profile(cfg.suite_grid2, rng).normalized();
            const auto c = random_toric_profile(cfg.suite_grid2, rng);
            const auto a = nested_below(b, c, 0.05 + 0.9 * U(rng));
            std::vector<ToricFundamental> r;
            for (const auto& w : ws2)
                r.push_back(toric_fundamental_check(a, b, w));
            return r;
        },
        cfg.count("threads"));
    for (std::size_t k = 0; k < ws2.size(); ++k) {
        Tally t("fundamental 2d " + ws2[k].label(),
                ws2[k].kind() == WeightKind::ConvexLow ? "energy of the larger function: constant 2^n"
                                                       : "energy of the larger function: constant (M+1)^n");
        for (const auto& row : two) {
            const auto& f = row[k];
            t.add(f.lhs, f.rhs, f.rhs - f.lhs, f.ok);
            if (f.rhs > 0.0)
                max_ratio = std::max(max_ratio, f.lhs * f.constant / f.rhs);
        }
        out.push_back(t.done());
    }
    // sharpness probe: random pairs plus pairs whose masses all sit on the same level
    // chord over [-1/2, 1/2] rises at most g(1/2) - g(0) < 0.32 above g, so phi stays <= 0
    const auto G = cfg.grid;
    const auto node_at = [&](double t) { return static_cast<std::size_t>(std::llround((t - G.tmin) / G.step())); };
    for (double c : {0.5, 2.0, 7.0}) {
        const auto [lo, hi] = equal_energy_pair(G, c, node_at(-0.5), node_at(0.5));
        for (const auto& w : ws) {
            const auto f = fundamental_inequality_check(lo, hi, w);
            if (f.rhs > 0.0)
                max_ratio = std::max(max_ratio, f.lhs * f.constant / f.rhs);
        }
    }
    out.push_back(single("sharpness probe", "the constant cannot drop below 1", 1.0 - 1e-12, max_ratio,
                         max_ratio >= 1.0 - 1e-12, "max observed E(larger)/E(smaller)"));
    return out;
}

inline std::vector<Record> canonical_approximation(const SuiteConfig& cfg) {
    const int n = cfg.count("membership_profiles");
    const int eng = std::min(cfg.count("engineered_lelong"), n);
    struct Item {
        bool agree = false;
        bool exact = false;
        double locality = 0.0;
        double nested = 0.0;
        double rounding = 0.0;
        bool monotone = true;
        std::string error;
    };
    auto items = parallel_map<Item>(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            Item it;
            try {
                auto rng = rng_for(cfg, "canonical/" + std::to_string(i));
                std::uniform_real_distribution<double> U(0.0, 1.0);
                RadialProfile p = RadialProfile::reference(cfg.grid);
                if (static_cast<int>(i) < eng) {
                    RandomProfileOptions o;
                    o.lelong_zero = (i % 3 != 1) ? 0.05 + 0.4 * U(rng) : 0.0;
                    o.lelong_inf = (i % 3 != 0) ? 0.05 + 0.4 * U(rng) : 0.0;
                    p = random_profile(cfg.grid, rng, o);
                } else if (i == static_cast<std::size_t>(eng)) {
                    p = attenuate(shifted_green(cfg.grid), 0.5);
                } else if (i == static_cast<std::size_t>(eng) + 1) {
                    p = log_composed_green(cfg.grid);
                } else if (i == static_cast<std::size_t>(eng) + 2) {
                    p = slow_singularity_profile(cfg.grid, make_slow_log_weight());
                } else {
                    p = random_profile(cfg.grid, rng);
                }
                const auto m = membership(p);
                it.agree = m.agree;
                it.exact = m.member_exact;
                const auto js = geomspace(0.5, std::max(1.0, 10.0 * (-sup_phi(p).value + 1.0)), 6);
                const auto loc = locality_check(normalized(p), js);
                it.locality = loc.max_diff;
                it.nested = loc.max_nested_diff;
                it.rounding = loc.rounding;
                it.monotone = loc.retained_monotone;
            } catch (const std::exception& e) {
                it.error = e.what();
            }
            return it;
        },
        cfg.count("threads"));
    Tally agree("membership verdicts", "full mass iff no Lelong numbers (mass escape along cuts)");
    Tally local("locality of cut measures", "cut measures agree with MA(phi) on {phi > -j}");
    Tally mono("retained mass monotone", "non-pluripolar mass as an increasing limit");
    std::size_t members = 0, errors = 0;
    std::string first_error;
    for (const auto& it : items) {
        if (!it.error.empty()) {
            ++errors;
            if (first_error.empty())
                first_error = it.error;
            agree.add(0, 0, -kInf, false);
            continue;
        }
        members += it.exact;
        agree.add(it.agree, 1.0, it.agree ? 0.0 : -1.0, it.agree);
        const double d = std::max(it.locality, it.nested);
        local.add(d, it.rounding, it.rounding - d, d <= it.rounding);
        mono.add(0.0, 0.0, it.monotone ? 0.0 : -1.0, it.monotone);
    }
    std::string note = std::to_string(members) + " members";
    if (errors)
        note += ", " + std::to_string(errors) + " errors (first: " + first_error + ")";
    return {agree.done(note), local.done(), mono.done()};
}

inline std::vector<Record> solver(const SuiteConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(cfg.count("solver_targets"));
    using R = std::array<double, 2>;
    auto rt = parallel_map<R>(
        n,
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "solver/" + std::to_string(i));
            const auto mu = random_target(cfg.grid, rng, i % 2 == 1);
            const auto sol = solve(mu);
            return R{kolmogorov_distance(ma_measure(sol), mu), 2.0 * mu.max_atom()};
        },
        cfg.count("threads"));
    std::vector<Record> out;
    Tally t("round trip", "existence for non-pluripolar targets");
    for (const auto& [d, tol] : rt)
        t.add(d, tol, tol - d, d <= cfg.eps_factor * tol);
    out.push_back(t.done("tolerance = 2 cells"));

    bool rejected = false;
    try {
        auto mu = LineMeasure::make(cfg.grid, std::vector<double>(cfg.grid.n, 0.9 / static_cast<double>(cfg.grid.n)),
                                    0.1, 0.0);
        (void)solve(mu);
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::Unsolvable;
    }
    out.push_back(single("pluripolar target rejected", "targets charging pluripolar sets are not MA measures", 0.0,
                         0.0, rejected));

    const std::size_t nu = static_cast<std::size_t>(cfg.count("uniqueness_targets"));
    auto uq = parallel_map<UniquenessReport>(
        nu,
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "uniqueness/" + std::to_string(i));
            const auto mu = random_target(cfg.grid, rng, i % 2 == 1);
            return uniqueness_check(mu, cfg.count("uniqueness_trials"), derive_seed(cfg.seed, "uniqueness-trials"));
        },
        cfg.count("threads"));
    Tally u("uniqueness", "uniqueness up to constants for finite-energy solutions");
    for (const auto& r : uq)
        u.add(r.deviation, r.tolerance, r.tolerance - r.deviation, r.ok);
    out.push_back(u.done());

    // MA of the discrete solution against the continuous target F(t) = g'(t - 3): the
    // CDF distance halves with the cell width.  The potential itself converges faster
    // (its sup error against g(t - 3) - g(t) is reported alongside).
    const auto exact_cdf = [](double t) { return fs_slope(t - 3.0); };
    std::vector<double> errs, phi_errs;
    std::vector<std::size_t> ns{2000, 4000, 8000, 16000};
    for (std::size_t m : ns) {
        const LineGrid G{-40.0, 40.0, m};
        const auto mu = LineMeasure::from_cdf(G, exact_cdf);
        const auto sol = solve(mu);
        errs.push_back(cdf_distance_to(ma_measure(sol), exact_cdf));
        double e = 0.0;
        for (std::size_t k = 0; k < sol.grid().nodes(); ++k) {
            const double t = sol.grid().node(k);
            e = std::max(e, std::abs(sol.phi(k) - (fs_potential(t - 3.0) - fs_potential(t))));
        }
        phi_errs.push_back(e);
    }
    std::string note = "cdf distances";
    bool first_order = true;
    double worst = kInf;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        note += " " + fmt_short(errs[i]);
        if (i > 0) {
            const double r = errs[i - 1] / errs[i];
            worst = std::min(worst, r);
            first_order = first_order && r >= 1.8 && r <= 2.2;
        }
    }
    note += "; phi errors";
    for (double e : phi_errs)
        note += " " + fmt_short(e);
    out.push_back(single("grid refinement", "discretisation converges at first order", 1.8, worst, first_order, note));
    return out;
}

/// The slowly singular profile on a grid narrow enough that FS cell masses do not underflow.
inline LineGrid adapted_grid(const LineGrid& G) {
    const double h = G.step();
    const double T = std::min(330.0, std::min(-G.tmin, G.tmax));
    return LineGrid{-T, T, static_cast<std::size_t>(std::llround(2.0 * T / h))};
}

/// Density of MA(p) against the FS measure and the FS cell masses.
inline std::pair<std::vector<double>, std::vector<double>> density_against_reference(const RadialProfile& p) {
    const auto m = ma_measure(p);
    const auto ref = ma_measure(RadialProfile::reference(p.grid()));
    std::vector<double> f(m.atoms.size(), 0.0);
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = ref.atoms[k] > 0.0 ? m.atoms[k] / ref.atoms[k] : 0.0;
    return {f, ref.atoms};
}

inline std::vector<Record> slow_singularity(const SuiteConfig& cfg) {
    std::vector<Record> out;
    const auto p = slow_singularity_profile(cfg.grid, make_slow_log_weight());
    const auto tab = density_ratio_table(p, -400.0, -100.0, 31);
    double lo = kInf, hi = 0.0;
    for (const auto& r : tab) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    out.push_back(single("density ratio window", "density ~ c |z|^-2 (-log|z|^2)^-1 [log(-log|z|^2)]^-2", hi / lo - 1.0,
                         0.1, hi / lo - 1.0 <= 0.1, "t in [-400, -100]"));
    for (const auto& w : {make_power(0.25), make_power(0.5), make_power(1.0), make_log_iterated(1)}) {
        const auto seq = cut_energy_sequence(p, w);
        const double last = seq.steps.empty() ? 0.0 : seq.steps.back().energy;
        out.push_back(single("cut energies diverge " + w.label(), "full mass without finite energy", last, last,
                             seq.verdict == SequenceVerdict::Diverged, to_string(seq.verdict)));
    }
    const LineGrid H = adapted_grid(cfg.grid);
    const auto q = slow_singularity_profile(H, make_slow_log_weight());
    const auto [f, base] = density_against_reference(q);
    const auto w = young_adapted_weight(f, base);
    const auto seq = cut_energy_sequence(q, w);
    double inc = 0.0;
    for (std::size_t i = seq.steps.size() > 10 ? seq.steps.size() - 10 : 1; i < seq.steps.size(); ++i)
        inc = std::max(inc, std::abs(seq.steps[i].energy - seq.steps[i - 1].energy));
    out.push_back(single("adapted weight converges", "some weight gives finite energy", inc, 1e-6,
                         seq.verdict == SequenceVerdict::Converged, to_string(seq.verdict)));
    return out;
}

inline std::vector<Record> attenuation(const SuiteConfig& cfg) {
    std::vector<Record> out;
    const auto base = shifted_green(cfg.grid);
    for (double q : {0.5, 0.75, 0.9}) {
        const auto p = attenuate(base, q);
        const auto m = membership(p);
        const double mass = ma_measure(p).interior_mass();
        const std::string qs = fmt_short(q);
        out.push_back(single("member q=" + qs, "attenuated singularity has full mass", mass, 1.0,
                             m.member_by_limit && m.agree && std::abs(mass - 1.0) <= 1e-9,
                             "non-pluripolar mass " + fmt_short(mass)));
        const auto g = gradient_report(p);
        out.push_back(single("gradient diverges q=" + qs, "attenuated singularity outside the gradient class",
                             g.growth_exponent, -0.05, g.diverges, "fitted increment exponent"));
    }
    auto rng = rng_for(cfg, "attenuation/bounded");
    const auto b = random_member(cfg.grid, rng).shifted(-1.0);
    for (double q : {0.5, 0.75, 0.9}) {
        const auto g = gradient_report(attenuate(b, q));
        out.push_back(single("gradient finite on bounded base q=" + fmt_short(q), "bounded functions have finite gradient",
                             g.value, kInf, !g.diverges && std::isfinite(g.value)));
    }
    return out;
}

inline std::vector<RadialProfile> engineered_members(const SuiteConfig& cfg, int n) {
    std::vector<RadialProfile> ps;
    const auto green = shifted_green(cfg.grid);
    for (int i = 0; i < n; ++i) {
        if (i < n / 2) {
            ps.push_back(attenuate(green, 0.05 + 0.4 * i / std::max(1, n / 2)));
        } else if (i == n / 2) {
            ps.push_back(log_composed_green(cfg.grid));
        } else {
            auto rng = rng_for(cfg, "capacity/member/" + std::to_string(i));
            ps.push_back(random_member(cfg.grid, rng));
        }
    }
    return ps;
}

inline std::vector<Record> capacity(const SuiteConfig& cfg) {
    std::vector<Record> out;
    const auto w = make_power(1.0);
    const auto ts = geomspace(1.0, 1e3, 31);
    const auto members = engineered_members(cfg, cfg.count("capacity_members"));
    auto decays = parallel_map<std::pair<DecayReport, double>>(
        members.size(), [&](std::size_t i) { return std::pair{capacity_decay_check(members[i], w, ts), energy(members[i], w)}; },
        cfg.count("threads"));
    Tally fwd("capacity decay", "Cap(phi < -t) <= C |t chi(-t)|^-1");
    for (const auto& [d, e] : decays)
        fwd.add(d.sup_product, e, std::isfinite(d.sup_product) ? 0.0 : -kInf, d.bounded && std::isfinite(e));
    out.push_back(fwd.done("lhs = sup product, rhs = energy"));

    const auto conv = capacity_converse_check(attenuate(shifted_green(cfg.grid), 0.3), w, 0.5, ts);
    out.push_back(single("converse construction", "capacity decay t^-(1+eps) gives finite energy", conv.constant,
                         conv.energy, conv.hypothesis && conv.energy_finite));

    Tally dom("envelope domination", "test-function masses stay below the envelope capacity");
    auto rng = rng_for(cfg, "capacity/domination");
    const int per = std::max(1, cfg.count("test_functions"));
    for (std::size_t i = 0; i < std::min<std::size_t>(members.size(), 4); ++i) {
        const auto q = normalized(members[i * members.size() / 4]);
        for (double s : {0.5, 1.0, 1.5}) {
            const auto set = sublevel_set(q, s);
            if (std::none_of(set.begin(), set.end(), [](char c) { return c != 0; }))
                continue;
            for (const auto& d : envelope_domination(cfg.grid, set, rng, per)) {
                const double allow = cfg.eps_factor * d.eps_grid;
                dom.add(d.test_mass, d.capacity, d.capacity - d.test_mass + allow, d.capacity - d.test_mass >= -allow);
            }
        }
    }
    out.push_back(dom.done());
    return out;
}

inline std::vector<Record> sandwich(const SuiteConfig&) {
    std::vector<Record> out;
    std::vector<Weight> ws{make_power(1.0), make_power(1.5), make_power(2.0), make_power(3.0),
                           make_quasi_homog(1.0, 0.5), make_quasi_homog(2.0, 1.0), make_quasi_homog(1.5, 0.25)};
    for (const auto& w : ws) {
        // power(1) sits in both classes; the concave-class checks apply to all
        const auto rep = validate_as(w, WeightKind::ConcaveHigh);
        for (const char* name : {"scaling-sandwich", "derivative-bound"}) {
            const auto* c = rep.find(name);
            if (!c) {
                out.push_back(single(std::string(name) + " " + w.label(), "growth control of concave weights", 0, 0, false,
                                     "check missing"));
                continue;
            }
            out.push_back(single(std::string(name) + " " + w.label(), "growth control of concave weights", -c->worst_slack,
                                 1e-12, c->pass && c->worst_slack >= -1e-12,
                                 "witness t=" + fmt_short(c->witness_t)));
        }
    }
    return out;
}

inline std::vector<Record> polarization(const SuiteConfig& cfg) {
    using R = std::array<double, 3>;
    auto rs = parallel_map<R>(
        static_cast<std::size_t>(cfg.count("polarization_pairs")),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "polarization/" + std::to_string(i));
            const auto a = random_toric_profile(cfg.suite_grid2, rng, 3, static_cast<int>(i % 3));
            const auto b = random_toric_profile(cfg.suite_grid2, rng, 3, static_cast<int>((i + 1) % 3));
            const auto m = mixed_measures(a, b);
            double ident = 0.0, neg = kInf;
            for (std::size_t k = 0; k < m.sum.masses.size(); ++k) {
                ident = std::max(ident, std::abs(m.sum.masses[k] - m.a.masses[k] - 2.0 * m.mixed.masses[k] - m.b.masses[k]));
                neg = std::min(neg, m.mixed.masses[k]);
            }
            return R{ident, neg, m.mixed.total_norm()};
        },
        cfg.count("threads"));
    Tally id("polarization identity", "mixed measures by polarization");
    Tally ng("mixed masses nonnegative", "mixed measures are positive");
    Tally tm("mixed total mass", "mixed measures carry the full mass");
    for (const auto& [i, n, t] : rs) {
        id.add(i, cfg.polar_tol, cfg.polar_tol - i, i <= cfg.polar_tol);
        ng.add(n, -cfg.polar_tol, n + cfg.polar_tol, n >= -cfg.polar_tol);
        tm.add(t, 1.0, cfg.polar_tol - std::abs(t - 1.0), std::abs(t - 1.0) <= cfg.polar_tol);
    }
    return {id.done(), ng.done(), tm.done()};
}

inline std::vector<Record> stability(const SuiteConfig& cfg) {
    std::vector<double> eps;
    for (int j = 1; j <= 20; ++j)
        eps.push_back(std::ldexp(1.0, -j));
    const auto w = make_power(1.0);
    auto rs = parallel_map<StabilityReport>(
        static_cast<std::size_t>(cfg.count("stability_profiles")),
        [&](std::size_t i) {
            auto rng = rng_for(cfg, "stability/" + std::to_string(i));
            return reference_perturbation_check(random_profile(cfg.grid, rng), eps, w);
        },
        cfg.count("threads"));
    Tally mono("distances decrease", "stability of MA under decreasing perturbations");
    Tally below("below grid tolerance at j=20", "stability of MA under decreasing perturbations");
    Tally bnd("energies bounded", "uniform energy bound along the perturbation");
    for (const auto& r : rs) {
        mono.add(r.distances.front(), r.distances.back(), r.monotone ? 0.0 : -1.0, r.monotone);
        const double allow = cfg.eps_factor * r.eps_grid;
        below.add(r.distances.back(), allow, allow - r.distances.back(), r.distances.back() <= allow);
        const double emax = *std::max_element(r.energies.begin(), r.energies.end());
        bnd.add(emax, kInf, std::isfinite(emax) ? 0.0 : -kInf, r.bounded);
    }
    return {mono.done(), below.done(), bnd.done()};
}

inline std::vector<Record> young(const SuiteConfig& cfg) {
    std::vector<Record> out;
    auto rng = rng_for(cfg, "young/target");
    const auto prof = random_profile(cfg.grid, rng);
    const auto mu = ma_measure(prof);
    const auto [f, base] = density_against_reference(prof);
    const auto w = young_adapted_weight(f, base);
    std::vector<double> fs;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (base[k] > 0.0)
            fs.push_back(f[k]);
    const double fmax = *std::max_element(fs.begin(), fs.end());
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Tally t("pointwise Young inequality", "f (-chi)(-s) <= s + gamma(f)");
    const int pairs = cfg.count("young_pairs");
    for (int i = 0; i < pairs; ++i) {
        const double s = std::pow(10.0, -3.0 + 9.0 * U(rng));
        const double fv = i % 2 == 0 ? fs[static_cast<std::size_t>(U(rng) * static_cast<double>(fs.size() - 1))]
                                     : 2.0 * fmax * U(rng);
        const double sl = young_slack(w, s, fv);
        const double scale = std::max({1.0, s, fv * std::abs(w(-s))});
        t.add(fv * -w(-s), s, sl, sl >= -1e-12 * scale);
    }
    out.push_back(t.done());
    const auto sol = solve(mu);
    const double e = energy(sol, w);
    out.push_back(single("adapted weight on the solution", "the adapted weight has finite energy on its solution", e,
                         kInf, std::isfinite(e)));
    return out;
}

} // namespace suite

inline CriterionResult run_criterion(int id, const SuiteConfig& cfg) {
    CriterionResult c;
    c.id = id;
    c.title = criterion_title(id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (id) {
        case 1: c.records = suite::mass_normalization(cfg); break;
        case 2: c.records = suite::comparison(cfg); break;
        case 3: c.records = suite::fundamental(cfg); break;
        case 4: c.records = suite::canonical_approximation(cfg); break;
        case 5: c.records = suite::solver(cfg); break;
        case 6: c.records = suite::slow_singularity(cfg); break;
        case 7: c.records = suite::attenuation(cfg); break;
        case 8: c.records = suite::capacity(cfg); break;
        case 9: c.records = suite::sandwich(cfg); break;
        case 10: c.records = suite::polarization(cfg); break;
        case 11: c.records = suite::stability(cfg); break;
        case 12: c.records = suite::young(cfg); break;
        default: fail(ErrorKind::InvalidParameter, "no criterion " + std::to_string(id));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidParameter && (id < 1 || id > kCriteria))
            throw;
        c.records.push_back(suite::failure(c.title, "plumbing", e));
    } catch (const std::exception& e) {
        c.records.push_back(suite::failure(c.title, "plumbing", e));
    }
    c.seconds = suite::elapsed(t0);
    return c;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Runs the selected criteria (all when empty) and writes <out>/verify.json.
inline SuiteResult cmd_verify(const SuiteConfig& cfg, const std::vector<int>& only = {},
                              const std::function<void(const CriterionResult&)>& progress = {}) {
    cfg.validate();
    SuiteResult res;
    res.environment = environment_fingerprint(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    for (int id = 1; id <= kCriteria; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
            continue;
        res.criteria.push_back(run_criterion(id, cfg));
        if (progress)
            progress(res.criteria.back());
    }
    res.wall_clock = suite::elapsed(t0);
    write_file(std::filesystem::path(cfg.out) / "verify.json", res.to_json().dump(1) + "\n");
    return res;
}

/// Rows (t, Cap, |t chi(-t)|^-1, product) over a geometric sweep.
inline std::string cmd_capacity_curve(const RadialProfile& p, const Weight& w, double t0, double t1, int points) {
    require(t0 > 0.0 && t1 > t0 && points >= 2, ErrorKind::InvalidParameter, "sweep needs 0 < t0 < t1 and points >= 2");
    const auto rep = capacity_decay_check(p, w, geomspace(t0, t1, points));
    std::string csv = "t,capacity,inverse_bound,product\n";
    for (const auto& r : rep.rows)
        csv += fmt_double(r.t) + "," + fmt_double(r.capacity) + "," + fmt_double(r.inverse_bound) + "," +
               fmt_double(r.product) + "\n";
    return csv;
}

struct SolveOutcome {
    RadialProfile profile;
    double distance = 0.0;
    double tolerance = 0.0;
};

inline SolveOutcome cmd_solve(const LineMeasure& mu) {
    auto p = solve(mu);
    const double d = kolmogorov_distance(ma_measure(p), mu);
    return {std::move(p), d, 2.0 * mu.max_atom()};
}

/// Example tables: file name -> CSV text.
inline std::map<std::string, std::string> cmd_examples(const SuiteConfig& cfg) {
    std::map<std::string, std::string> files;
    const LineGrid& G = cfg.grid;

    {
        const auto p = slow_singularity_profile(G, make_slow_log_weight());
        std::string csv = "t,density,ratio\n";
        for (const auto& r : density_ratio_table(p, -400.0, -100.0, 31))
            csv += fmt_double(r.t) + "," + fmt_double(r.density) + "," + fmt_double(r.ratio) + "\n";
        files["slow_singularity_density.csv"] = csv;
        std::string cuts = "weight,j,energy,escaping_mass,escaping_term,verdict\n";
        for (const auto& w : {make_power(0.25), make_power(0.5), make_power(1.0), make_log_iterated(1)}) {
            const auto seq = cut_energy_sequence(p, w);
            for (const auto& s : seq.steps)
                cuts += w.label() + "," + fmt_double(s.j) + "," + fmt_double(s.energy) + "," +
                        fmt_double(s.escaping_mass) + "," + fmt_double(s.escaping_term) + "," + to_string(seq.verdict) +
                        "\n";
        }
        files["slow_singularity_cuts.csv"] = cuts;
    }

    {
        // attenuation -(-phi)^q of the Green profile; the largest power alpha on a
        // scan with a converged cut sequence estimates alpha(q)
        const auto green = shifted_green(G);
        std::string csv = "q,lelong_zero,lelong_inf,nonpluripolar_mass,member,gradient_diverges,gradient_exponent,"
                          "alpha_estimate,alpha_threshold\n";
        for (int i = 1; i <= 9; ++i) {
            const double q = 0.1 * i;
            const auto p = attenuate(green, q);
            const auto m = membership(p);
            const auto g = gradient_report(p);
            double alpha = 0.0;
            for (int k = 1; k <= 40; ++k) {
                const double a = 0.1 * k;
                if (cut_energy_sequence(p, make_power(a)).verdict == SequenceVerdict::Diverged)
                    break;
                alpha = a;
            }
            csv += fmt_double(q) + "," + fmt_double(p.lelong_zero()) + "," + fmt_double(p.lelong_inf()) + "," +
                   fmt_double(ma_measure(p).interior_mass()) + "," + (m.member_by_limit ? "1" : "0") + "," +
                   (g.diverges ? "1" : "0") + "," + fmt_double(g.growth_exponent) + "," + fmt_double(alpha) + "," +
                   fmt_double((1.0 - q) / q) + "\n";
        }
        files["attenuation.csv"] = csv;
    }

    {
        const auto p = log_composed_green(G);
        std::string prof = "t,phi\n";
        const std::size_t stride = std::max<std::size_t>(1, G.nodes() / 2000);
        for (std::size_t k = 0; k < G.nodes(); k += stride)
            prof += fmt_double(G.node(k)) + "," + fmt_double(p.phi(k)) + "\n";
        files["log_composition_profile.csv"] = prof;
        std::string cap = "t,capacity,log_capacity\n";
        for (int i = 0; i <= 20; ++i) {
            const double t = 0.25 * i + 0.25;
            const double c = capacity_sublevel(normalized(p), t);
            cap += fmt_double(t) + "," + fmt_double(c) + "," + fmt_double(c > 0.0 ? std::log(c) : -kInf) + "\n";
        }
        files["log_composition_capacity.csv"] = cap;
    }
    return files;
}

} // namespace pluri
