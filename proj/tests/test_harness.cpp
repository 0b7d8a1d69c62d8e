// SPDX-License-Identifier: MIT

#include "common.hpp"

#include <filesystem>

using namespace pluri;
using testing::error_kind;

namespace {

SuiteConfig small_solver_config() {
    SuiteConfig cfg;
    cfg.load_text("grid = -40,40,2001\n"
                  "solver_targets = 4\n"
                  "uniqueness_targets = 1\n"
                  "uniqueness_trials = 2\n"
                  "threads = 1\n");
    cfg.out = (std::filesystem::temp_directory_path() / "pluri_test_harness").string();
    return cfg;
}

} // namespace

TEST_CASE("config text and overrides", "[harness][config]") {
    SuiteConfig cfg;
    cfg.load_text("# comment\nseed = 0x10\n grid=-10,10,101 \nweights = power:p=1;logiter:m=2\n"
                  "eps_factor = 0.5 # trailing\nyoung_pairs = 7\ngrid2 = 5,11\n");
    CHECK(cfg.seed == 16);
    CHECK(cfg.grid == LineGrid{-10.0, 10.0, 101});
    CHECK(cfg.grid2 == BoxGrid{5.0, 11});
    CHECK(cfg.weights == std::vector<std::string>{"power:p=1", "logiter:m=2"});
    CHECK(cfg.eps_factor == 0.5);
    CHECK(cfg.count("young_pairs") == 7);
    cfg.validate();

    CHECK(error_kind([&] { cfg.set("colour", "blue"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { cfg.set("seed", "12ab"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { cfg.set("grid", "1,2"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { cfg.set("young_pairs", "1.5"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { cfg.load_text("seed 3\n"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { (void)cfg.count("nothing"); }) == ErrorKind::InvalidParameter);

    SuiteConfig bad;
    bad.set("young_pairs", "0");
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::InvalidParameter);
    SuiteConfig badw;
    badw.set("weights", "power:p=-1");
    CHECK(error_kind([&] { badw.validate(); }));
}

TEST_CASE("parallel_map is order-preserving and propagates errors", "[harness][pool]") {
    const auto v = parallel_map<std::size_t>(1000, [](std::size_t i) { return i * i; }, 4);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(v[i] == i * i);
    CHECK(parallel_map<int>(0, [](std::size_t) { return 1; }, 4).empty());
    CHECK_THROWS_AS(parallel_map<int>(
                        50,
                        [](std::size_t i) -> int {
                            if (i == 17)
                                throw std::runtime_error("boom");
                            return 0;
                        },
                        4),
                    std::runtime_error);
}

TEST_CASE("per-item streams depend on seed and name only", "[harness][seeds]") {
    SuiteConfig a, b;
    b.seed = a.seed + 1;
    auto r1 = suite::rng_for(a, "x/1");
    auto r2 = suite::rng_for(a, "x/1");
    auto r3 = suite::rng_for(a, "x/2");
    auto r4 = suite::rng_for(b, "x/1");
    const auto v1 = r1();
    CHECK(v1 == r2());
    CHECK(v1 != r3());
    CHECK(v1 != r4());
}

TEST_CASE("tally keeps the worst sample", "[harness][tally]") {
    suite::Tally t("t", "plumbing");
    t.add(1.0, 2.0, 1.0, true);
    t.add(3.0, 2.0, -1.0, false);
    t.add(0.0, 2.0, 2.0, true);
    const auto r = t.done("x");
    CHECK_FALSE(r.pass);
    CHECK(r.lhs == 3.0);
    CHECK(r.slack == -1.0);
    CHECK(r.note == "3 samples, 1 failed; x");
    CHECK_FALSE(suite::Tally("e", "plumbing").done().pass);
}

TEST_CASE("solver criterion passes and fails with a zero grid allowance", "[harness][criteria]") {
    auto cfg = small_solver_config();
    const auto ok = run_criterion(5, cfg);
    for (const auto& r : ok.records)
        INFO(r.name << ": " << r.note);
    CHECK(ok.pass());

    cfg.eps_factor = 0.0;
    const auto bad = run_criterion(5, cfg);
    CHECK_FALSE(bad.pass());
    CHECK(error_kind([&] { run_criterion(13, cfg); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("verify writes a results file", "[harness][criteria]") {
    auto cfg = small_solver_config();
    const auto res = cmd_verify(cfg, {9});
    REQUIRE(res.criteria.size() == 1);
    CHECK(res.criteria[0].id == 9);
    const auto j = parse_json(read_file(std::filesystem::path(cfg.out) / "verify.json"));
    CHECK(j["criteria"][0]["id"] == 9);
    CHECK(j["pass"] == res.pass());
    CHECK(j["environment"]["config"]["seed"] == cfg.seed);
}
