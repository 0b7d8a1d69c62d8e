// SPDX-License-Identifier: MIT

#include "common.hpp"

#include <filesystem>
#include <random>

using namespace pluri;
using Catch::Approx;
using testing::error_kind;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "pluri_test_io";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("radial profiles round-trip through JSON", "[io]") {
    const LineGrid G{-30.0, 30.0, 601};
    std::mt19937_64 rng(31);
    RandomProfileOptions o;
    o.lelong_zero = 0.25;
    const auto p = random_profile(G, rng, o);
    const auto path = scratch("profile.json");
    save_profile(path, p);
    const auto q = load_profile(path);
    CHECK(q.grid() == p.grid());
    CHECK(q.psi() == p.psi());
    CHECK(q.slope_neg() == p.slope_neg());
    CHECK(q.slope_pos() == p.slope_pos());

    const auto s = shifted_green(G);
    const auto back = profile_from_json(parse_json(profile_json(attenuate(s, 0.5)).dump()));
    CHECK(back.tail_flag_neg());
    CHECK_FALSE(back.tail_flag_pos());
}

TEST_CASE("measures round-trip through JSON and CSV", "[io]") {
    const LineGrid G{-5.0, 5.0, 10};
    std::vector<double> atoms(10, 0.08);
    const auto m = LineMeasure::make(G, atoms, 0.1, 0.1);
    const auto jpath = scratch("m.json");
    const auto cpath = scratch("m.csv");
    save_measure(jpath, m);
    save_measure(cpath, m);
    for (const auto& path : {jpath, cpath}) {
        const auto r = load_measure(path);
        CHECK(r.grid == m.grid);
        CHECK(r.atoms == m.atoms);
        CHECK(r.charge_neg_inf == m.charge_neg_inf);
        CHECK(r.charge_pos_inf == m.charge_pos_inf);
    }
    CHECK(measure_csv(m).find("k,t_lo,t_hi,mass") != std::string::npos);
}

TEST_CASE("toric profiles round-trip through JSON", "[io]") {
    const BoxGrid G{5.0, 11};
    const auto p = ToricProfile::reference(G);
    const auto q = toric_from_json(parse_json(toric_json(p).dump()));
    CHECK(q.grid() == G);
    CHECK(q.psi() == p.psi());
    CHECK(error_kind([] { box_from_json(parse_json(R"({"tmin": -1, "tmax": 2, "n": 5})")); }) ==
          ErrorKind::InvalidInput);
}

TEST_CASE("non-finite values are spelled as strings", "[io]") {
    json j{{"a", kInf}, {"b", {-kInf, 1.0, std::nan("")}}};
    encode_nonfinite(j);
    CHECK(j["a"] == "inf");
    CHECK(j["b"][0] == "-inf");
    CHECK(j["b"][1] == 1.0);
    CHECK(j["b"][2] == "nan");
    CHECK(detail::number(json("inf"), "x") == kInf);
    CHECK(std::isnan(detail::parse_number("nan", "x")));
    CHECK(fmt_double(0.1) == "0.10000000000000001");
    CHECK(fmt_double(-kInf) == "-inf");
    CHECK(fmt_short(0.5) == "0.5");
}

TEST_CASE("malformed input is rejected", "[io]") {
    CHECK(error_kind([] { parse_json("{"); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([] { profile_from_json(parse_json(R"({"grid": {"tmin": 0, "tmax": 1, "n": 3}})")); }) ==
          ErrorKind::InvalidInput);
    CHECK(error_kind([] { detail::numbers(json("x"), "psi"); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([] { detail::count(json(2.5), "n"); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([] { detail::parse_number("1.0x", "t"); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([] { measure_from_csv("k,t_lo,t_hi,mass\n0,0,1,1\n"); }) == ErrorKind::InvalidInput);
    CHECK(error_kind([] { measure_from_csv("# tmin=0 tmax=1 n=2\nk,t_lo,t_hi,mass\n0,0,1\n"); }) ==
          ErrorKind::InvalidInput);
    CHECK(error_kind([] { read_file("/nonexistent/pluri/file.json"); }) == ErrorKind::Io);
}
