// SPDX-License-Identifier: MIT
//
// pluri: verification suites, example tables and file-based commands.
// Exit codes: 0 pass, 1 check failure, 2 usage, 3 I/O.

#include "pluri/pluri.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

enum Exit { kPass = 0, kCheck = 1, kUsage = 2, kIo = 3 };

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
auto loading(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw LoadError(e.what());
    }
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        pluri::write_file(path, text);
}

} // namespace

int main(int argc, char** argv) {
    using namespace pluri;
    CLI::App app{"Radial and toric models of weighted pluripotential energies"};
    app.require_subcommand(1);

    std::string config_file, grid_spec, out_dir, weight_spec = "power:p=1";
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "master seed");
    app.add_option("--grid", grid_spec, "radial grid tmin,tmax,n");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--config", config_file, "key=value configuration file");
    app.add_option("--weight", weight_spec, "weight, e.g. power:p=0.5, logiter:m=1, qh:p=1,a=0.5");

    auto* verify = app.add_subcommand("verify", "run the acceptance suites");
    std::vector<int> only;
    verify->add_option("--only", only, "criterion ids to run")->delimiter(',');

    auto* curve = app.add_subcommand("capacity-curve", "capacity of sublevel sets against |t chi(-t)|^-1");
    std::string profile_file, csv_file;
    double t0 = 1.0, t1 = 1000.0;
    int points = 31;
    curve->add_option("profile", profile_file, "profile JSON")->required();
    curve->add_option("--t0", t0, "first level");
    curve->add_option("--t1", t1, "last level");
    curve->add_option("--points", points, "number of levels");
    curve->add_option("--csv", csv_file, "output file (stdout when omitted)");

    auto* solve_cmd = app.add_subcommand("solve", "solve MA(phi) = mu for a radial target");
    std::string measure_file, profile_out;
    solve_cmd->add_option("measure", measure_file, "measure JSON or CSV")->required();
    solve_cmd->add_option("profile_out", profile_out, "output profile JSON")->required();

    auto* examples = app.add_subcommand("examples", "write the example tables as CSV");

    auto* ma = app.add_subcommand("ma", "Monge-Ampere measure of a profile as CSV");
    bool toric = false;
    ma->add_option("profile", profile_file, "profile JSON")->required();
    ma->add_flag("--toric", toric, "profile is a toric profile");
    ma->add_option("--csv", csv_file, "output file (stdout when omitted)");

    auto* energy_cmd = app.add_subcommand("energy", "weighted energy of a profile");
    energy_cmd->add_option("profile", profile_file, "profile JSON")->required();
    energy_cmd->add_flag("--toric", toric, "profile is a toric profile");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    SuiteConfig cfg;
    Weight weight = make_power(1.0);
    try {
        if (!config_file.empty())
            cfg.load_text(loading([&] { return read_file(config_file); }));
        if (*seed_opt)
            cfg.seed = seed;
        if (!grid_spec.empty())
            cfg.set("grid", grid_spec);
        if (!out_dir.empty())
            cfg.out = out_dir;
        cfg.validate();
        weight = parse_weight(weight_spec);
    } catch (const LoadError& e) {
        std::cerr << "pluri: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "pluri: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*verify) {
            const auto res = cmd_verify(cfg, only, [](const CriterionResult& c) {
                std::printf("[%s] %2d %s (%.1fs)\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str(), c.seconds);
                for (const auto& r : c.records)
                    if (!r.pass)
                        std::printf("       failed: %s [%s] %s\n", r.name.c_str(), r.anchor.c_str(), r.note.c_str());
                std::fflush(stdout);
            });
            std::printf("wrote %s/verify.json\n", cfg.out.c_str());
            return res.pass() ? kPass : kCheck;
        }
        if (*curve) {
            const auto p = loading([&] { return load_profile(profile_file); });
            emit(cmd_capacity_curve(p, weight, t0, t1, points), csv_file);
            return kPass;
        }
        if (*solve_cmd) {
            const auto mu = loading([&] { return load_measure(measure_file); });
            const auto res = cmd_solve(mu);
            save_profile(profile_out, res.profile);
            std::printf("round-trip distance %.3e (tolerance %.3e)\n", res.distance, res.tolerance);
            return res.distance <= res.tolerance ? kPass : kCheck;
        }
        if (*examples) {
            for (const auto& [name, text] : cmd_examples(cfg)) {
                write_file(std::filesystem::path(cfg.out) / name, text);
                std::printf("wrote %s/%s\n", cfg.out.c_str(), name.c_str());
            }
            return kPass;
        }
        if (*ma) {
            if (toric) {
                const auto p = loading([&] { return load_toric(profile_file); });
                emit(planar_csv(alexandrov_ma(p)), csv_file);
            } else {
                const auto p = loading([&] { return load_profile(profile_file); });
                emit(measure_csv(ma_measure(p)), csv_file);
            }
            return kPass;
        }
        if (*energy_cmd) {
            json j{{"weight", weight_json(weight)}};
            if (toric) {
                const auto p = loading([&] { return load_toric(profile_file); });
                j["energy"] = energy2(p, weight);
            } else {
                const auto p = loading([&] { return load_profile(profile_file); });
                const auto seq = cut_energy_sequence(p, weight);
                j["energy"] = energy(p, weight);
                j["lelong_zero"] = p.lelong_zero();
                j["lelong_inf"] = p.lelong_inf();
                j["cut_sequence"] = seq;
            }
            encode_nonfinite(j);
            std::cout << j.dump(1) << "\n";
            return kPass;
        }
    } catch (const LoadError& e) {
        std::cerr << "pluri: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        std::cerr << "pluri: " << e.what() << "\n";
        if (e.kind() == ErrorKind::Io)
            return kIo;
        if (e.kind() == ErrorKind::InvalidParameter)
            return kUsage;
        return kCheck;
    } catch (const std::exception& e) {
        std::cerr << "pluri: " << e.what() << "\n";
        return kCheck;
    }
    return kUsage;
}
