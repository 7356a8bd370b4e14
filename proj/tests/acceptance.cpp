// Acceptance battery runner: executes every criterion at its pinned size and
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include "truncdist/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

int main() {
    truncdist::verify::VerifyOptions opts;
    opts.trials = 20000;  // per-world trials for the q_half scaling search
    opts.seed = 1;
    if (const char* cli = std::getenv("TRUNCDIST_CLI")) opts.cli_path = cli;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<truncdist::verify::CheckResult> results = truncdist::verify::run_acceptance(opts);
    const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

    int failures = 0;
    for (const auto& r : results) {
        failures += !r.pass;
        std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.check.c_str(),
                    r.detail.empty() ? "" : " -- ", r.detail.c_str());
    }
    std::printf("%zu criteria, %d failed, %llds\n", results.size(), failures,
                static_cast<long long>(elapsed));
    return failures;
}
