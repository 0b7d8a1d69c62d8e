// SPDX-License-Identifier: MIT
//
// Runs the twelve acceptance criteria at their stated sizes and tolerances and
// prints one pass/fail line per criterion.  Usage: acceptance [out_dir] [ids...]

#include "pluri/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    pluri::SuiteConfig cfg;
    cfg.out = argc > 1 ? argv[1] : "acceptance_results";
    std::vector<int> only;
    for (int i = 2; i < argc; ++i)
        only.push_back(std::atoi(argv[i]));
    const auto res = pluri::cmd_verify(cfg, only, [](const pluri::CriterionResult& c) {
        std::printf("criterion %2d %-48s %s  (%.1f s)\n", c.id, c.title.c_str(), c.pass() ? "PASS" : "FAIL", c.seconds);
        for (const auto& r : c.records)
            std::printf("    %s %-52s lhs=%-12.6g rhs=%-12.6g %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.lhs, r.rhs,
                        r.note.c_str());
        std::fflush(stdout);
    });
    std::printf("%s: %zu criteria, wall clock %.1f s\n", res.pass() ? "ALL PASS" : "FAILURES", res.criteria.size(),
                res.wall_clock);
    return res.pass() ? 0 : 1;
}
