#ifndef TRUNCDIST_VERIFY_HPP
#define TRUNCDIST_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace truncdist::verify {

struct CheckResult {
    std::string suite;
    std::string check;
    bool pass = false;
    std::string detail;  // counterexample or measured values
};

struct VerifyOptions {
    std::vector<unsigned> nm_values{1, 2};  // n-m grid for the moments suite
    std::uint64_t q_lo = 2, q_hi = 6;
    std::uint64_t trials = 20000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string cli_path;  // binary to respawn for determinism checks
};

std::vector<std::string> suite_names();
bool suite_exists(const std::string& name);

/// Runs one suite ("all" for everything except the long-running acceptance
/// suite, which must be asked for by name).
std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& options);

/// The full acceptance battery with its pinned sizes, tolerances and seeds.
std::vector<CheckResult> run_acceptance(const VerifyOptions& options);

}  // namespace truncdist::verify

#endif
