// truncdist: exact, Monte Carlo and closed-form analysis of the advantage of
// distinguishing a truncated random permutation from a random function.
//
// Subcommands: exact, mc, bounds, qhalf, verify. All emit a single CSV or
// JSON table; identical configurations (including seeds) produce
// byte-identical output regardless of the worker count.

#include <CLI11.hpp>

#include "truncdist/bounds.hpp"
#include "truncdist/distinguish.hpp"
#include "truncdist/exact.hpp"
#include "truncdist/numeric.hpp"
#include "truncdist/parallel.hpp"
#include "truncdist/profile.hpp"
#include "truncdist/table.hpp"
#include "truncdist/verify.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unistd.h>
#include <vector>

namespace td = truncdist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRowFailure = 1;
constexpr int kExitUsage = 2;

struct OutputOptions {
    std::string format = "csv";
    std::string path;  // empty -> stdout
    bool no_timestamp = false;
    bool no_timing = false;
    unsigned threads = 0;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", out.path, "Write the table to a file instead of stdout");
    cmd->add_flag("--no-timestamp", out.no_timestamp, "Omit the timestamp from JSON meta");
    cmd->add_flag("--no-timing", out.no_timing, "Report wall times as 0 (for reproducible output)");
    cmd->add_option("--threads", out.threads,
                    "Worker threads (0 = auto; TRUNCDIST_THREADS caps either way)");
}

int emit(const td::Table& table, const OutputOptions& out, const td::TableMeta& meta) {
    std::string text = out.format == "json" ? td::to_json(table, meta) : td::to_csv(table);
    if (out.path.empty()) {
        std::fputs(text.c_str(), stdout);
        return kExitOk;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "cannot open output file: %s\n", out.path.c_str());
        return kExitRowFailure;
    }
    f << text;
    return kExitOk;
}

// Inclusive integer grid flag: "7", "2..6" or "1,2,8".
std::vector<std::uint64_t> parse_grid(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!piece.empty()) {
            std::size_t dots = piece.find("..");
            if (dots == std::string::npos) {
                values.push_back(std::stoull(piece));
            } else {
                std::uint64_t lo = std::stoull(piece.substr(0, dots));
                std::uint64_t hi = std::stoull(piece.substr(dots + 2));
                if (hi < lo) throw CLI::ValidationError("range", "descending range " + piece);
                if (hi - lo > 1000000) throw CLI::ValidationError("range", "range too wide");
                for (std::uint64_t v = lo; v <= hi; ++v) values.push_back(v);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (values.empty()) throw CLI::ValidationError("range", "empty grid: " + text);
    return values;
}

struct GridOptions {
    std::string n_spec, m_spec = "0", q_spec, q_pow2_spec;
};

void add_grid_options(CLI::App* cmd, GridOptions& grid, bool q_required = true) {
    cmd->add_option("--n", grid.n_spec, "Domain bits n: value, a..b or comma list")->required();
    cmd->add_option("--m", grid.m_spec, "Truncated bits m: value, a..b or comma list")
        ->capture_default_str();
    auto* q = cmd->add_option("--q", grid.q_spec, "Query budget q: value, a..b or comma list");
    auto* qp = cmd->add_option("--q-pow2", grid.q_pow2_spec,
                               "Query budgets as powers of two, e.g. 3..8 for 8..256");
    qp->excludes(q);
    if (q_required) {
        // exactly one of --q / --q-pow2
        cmd->callback([&grid]() {
            if (grid.q_spec.empty() && grid.q_pow2_spec.empty())
                throw CLI::RequiredError("--q or --q-pow2");
        });
    }
}

std::vector<td::Params> expand_grid(const GridOptions& grid) {
    std::vector<std::uint64_t> qs;
    if (!grid.q_pow2_spec.empty()) {
        for (std::uint64_t e : parse_grid(grid.q_pow2_spec)) {
            if (e > 62) throw td::params_error("q-pow2 exponent above 62");
            qs.push_back(std::uint64_t(1) << e);
        }
    } else {
        qs = parse_grid(grid.q_spec);
    }
    std::vector<td::Params> out;
    for (std::uint64_t n : parse_grid(grid.n_spec))
        for (std::uint64_t m : parse_grid(grid.m_spec))
            for (std::uint64_t q : qs)
                out.emplace_back(static_cast<unsigned>(n), static_cast<unsigned>(m), q);
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

std::string bound_cell(const td::BoundValue& b) {
    return b.applicable ? td::real_string(*b.value, 15) : "n/a";
}

std::string self_path() {
    char buf[4096];
    ssize_t len = readlink("/proc/self/exe", buf, sizeof buf - 1);
    if (len <= 0) return "";
    buf[len] = '\0';
    return buf;
}

// ---------------------------------------------------------------------------

int cmd_exact(const GridOptions& grid, const OutputOptions& out, std::uint64_t limit) {
    const std::vector<td::Params> instances = expand_grid(grid);
    td::Table table;
    table.columns = {"n", "m", "q", "advantage", "advantage_rational", "profiles", "wall_ms"};

    struct Row {
        td::ExactAdvantageReport report;
        std::string error;
        std::int64_t wall_ms = 0;
    };
    std::vector<Row> rows(instances.size());
    td::parallel_chunks(instances.size(), td::resolve_threads(out.threads),
                        [&](std::uint64_t b, std::uint64_t e, unsigned) {
                            for (std::uint64_t i = b; i < e; ++i) {
                                auto t0 = std::chrono::steady_clock::now();
                                try {
                                    rows[i].report = td::exact_advantage(instances[i], limit);
                                } catch (const td::size_error& err) {
                                    rows[i].error = err.what();
                                }
                                rows[i].wall_ms =
                                    std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                            }
                        });

    bool any_failed = false;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const td::Params& p = instances[i];
        const Row& row = rows[i];
        std::string wall = out.no_timing ? "0" : std::to_string(row.wall_ms);
        if (!row.error.empty()) {
            any_failed = true;
            table.rows.push_back({std::to_string(p.n), std::to_string(p.m), std::to_string(p.q),
                                  "error: " + row.error, "", "", wall});
        } else {
            table.rows.push_back({std::to_string(p.n), std::to_string(p.m), std::to_string(p.q),
                                  td::decimal_string(row.report.advantage, 30),
                                  td::rat_string(row.report.advantage),
                                  std::to_string(row.report.profiles_enumerated), wall});
        }
    }
    int rc = emit(table, out, {"exact", std::nullopt, !out.no_timestamp});
    return rc != kExitOk ? rc : (any_failed ? kExitRowFailure : kExitOk);
}

int cmd_mc(const GridOptions& grid, const OutputOptions& out, const std::string& kind,
           std::uint64_t trials, std::uint64_t seed, double theta_opt, bool theta_set,
           double hall_c) {
    const std::vector<td::Params> instances = expand_grid(grid);
    td::Table table;
    table.columns = {"distinguisher", "n", "m", "q", "trials", "point", "ci_half_width", "seed"};
    for (const td::Params& p : instances) {
        td::Distinguisher d = [&] {
            if (kind == "lr") return td::Distinguisher::likelihood_ratio(p);
            if (kind == "col2") {
                td::Rat theta = theta_set
                                    ? td::rat_from_double(theta_opt)
                                    : td::Rat(td::expected_collision_count(p, 2) +
                                              td::rat_from_double(0.5));
                return td::Distinguisher::col2_threshold(p, theta);
            }
            return td::Distinguisher::good_set_membership(p, td::hall_good_set(p, hall_c));
        }();
        td::AdvEstimate est = td::mc_advantage(d, trials, seed, out.threads);
        table.rows.push_back({d.name(), std::to_string(p.n), std::to_string(p.m),
                              std::to_string(p.q), std::to_string(trials),
                              format_double(est.point), format_double(est.ci_half_width),
                              std::to_string(seed)});
    }
    return emit(table, out, {"mc", seed, !out.no_timestamp});
}

int cmd_bounds(const GridOptions& grid, const OutputOptions& out) {
    const std::vector<td::Params> instances = expand_grid(grid);
    td::Table table;
    table.columns = {"n",    "m",    "q",       "birthday_lower", "birthday_upper",
                     "hall", "stam", "small_m", "large_m",        "exact_m0"};
    std::vector<std::vector<std::string>> rows(instances.size());
    td::parallel_chunks(instances.size(), td::resolve_threads(out.threads),
                        [&](std::uint64_t b, std::uint64_t e, unsigned) {
                            for (std::uint64_t i = b; i < e; ++i) {
                                const td::Params& p = instances[i];
                                td::BirthdayBounds bd = td::birthday_bounds(p);
                                rows[i] = {std::to_string(p.n),
                                           std::to_string(p.m),
                                           std::to_string(p.q),
                                           bound_cell(bd.lower),
                                           bound_cell(bd.upper),
                                           bound_cell(td::hall_bound(p)),
                                           bound_cell(td::stam_bound(p)),
                                           bound_cell(td::small_m_bound(p)),
                                           bound_cell(td::large_m_bound(p)),
                                           bd.exact_m0 ? td::decimal_string(*bd.exact_m0, 30)
                                                       : "n/a"};
                            }
                        });
    table.rows = std::move(rows);
    return emit(table, out, {"bounds", std::nullopt, !out.no_timestamp});
}

int cmd_qhalf(const GridOptions& grid, const OutputOptions& out, const std::string& method,
              std::uint64_t max_q, std::uint64_t trials, std::uint64_t seed) {
    td::Table table;
    table.columns = {"n", "m", "method", "q_half", "certificate", "last_q_certified"};
    bool any_failed = false;

    std::vector<std::pair<unsigned, unsigned>> nm;
    for (std::uint64_t n : parse_grid(grid.n_spec))
        for (std::uint64_t m : parse_grid(grid.m_spec)) {
            td::Params probe(static_cast<unsigned>(n), static_cast<unsigned>(m), 1);  // validate
            nm.emplace_back(probe.n, probe.m);
        }

    for (auto [n, m] : nm) {
        std::vector<std::string> row{std::to_string(n), std::to_string(m), method};
        if (method == "mc-lr") {
            std::uint64_t cap = std::min<std::uint64_t>(max_q, std::uint64_t(1) << n);
            td::EmpiricalQHalf eq = td::empirical_q_half(
                [](const td::Params& p) { return td::Distinguisher::likelihood_ratio(p); }, n, m,
                cap, trials, seed, out.threads);
            if (eq.reached) {
                row.push_back(std::to_string(eq.q_half));
                row.push_back("mc-lower-ci");
            } else {
                row.push_back("");
                row.push_back("not-reached");
                any_failed = true;
            }
            row.push_back("");
        } else {
            td::QHalfCertificate cert =
                td::q_half_from_bound(*td::bound_from_name(method), n, m);
            if (!cert.applicable) {
                row.insert(row.end(), {"", "not-applicable: " + cert.reason, ""});
                any_failed = true;
            } else if (!cert.reached) {
                row.insert(row.end(),
                           {"", "certified-below-half", std::to_string(cert.last_q_certified)});
            } else {
                row.insert(row.end(), {std::to_string(cert.first_q_at_half), "bound-certified",
                                       std::to_string(cert.last_q_certified)});
            }
        }
        table.rows.push_back(std::move(row));
    }
    int rc = emit(table, out, {"qhalf", seed, !out.no_timestamp});
    return rc != kExitOk ? rc : (any_failed ? kExitRowFailure : kExitOk);
}

int cmd_verify(const OutputOptions& out, const std::string& suite,
               td::verify::VerifyOptions vopts) {
    if (!td::verify::suite_exists(suite)) {
        std::fprintf(stderr, "unknown suite: %s\n", suite.c_str());
        return kExitUsage;
    }
    if (vopts.cli_path.empty()) vopts.cli_path = self_path();
    vopts.threads = out.threads;
    std::vector<td::verify::CheckResult> results = td::verify::run_suite(suite, vopts);

    td::Table table;
    table.columns = {"suite", "check", "pass", "detail"};
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        table.rows.push_back({r.suite, r.check, r.pass ? "pass" : "FAIL", r.detail});
    }
    int rc = emit(table, out, {"verify", vopts.seed, !out.no_timestamp});
    return rc != kExitOk ? rc : (all_pass ? kExitOk : kExitRowFailure);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"advantage calculator for truncated-permutation vs random-function distinguishing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", td::kVersion);

    // exact
    GridOptions exact_grid;
    OutputOptions exact_out;
    std::uint64_t exact_limit = td::kDefaultProfileLimit;
    CLI::App* exact = app.add_subcommand("exact", "Exact total-variation advantage over a grid");
    add_grid_options(exact, exact_grid);
    add_output_options(exact, exact_out);
    exact->add_option("--limit", exact_limit, "Profile stream limit")->capture_default_str();

    // mc
    GridOptions mc_grid;
    OutputOptions mc_out;
    std::string mc_kind = "lr";
    std::uint64_t mc_trials = 100000, mc_seed = 1;
    double mc_theta = 0;
    bool mc_theta_set = false;
    double mc_hall_c = 1.0;
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo advantage estimates");
    add_grid_options(mc, mc_grid);
    add_output_options(mc, mc_out);
    mc->add_option("--distinguisher", mc_kind, "Decision rule")
        ->check(CLI::IsMember({"lr", "col2", "goodset"}))
        ->capture_default_str();
    mc->add_option("--trials", mc_trials, "Trials per world")->capture_default_str();
    mc->add_option("--seed", mc_seed, "Base seed")->capture_default_str();
    mc->add_option("--theta", mc_theta, "col2 threshold (default: E col_2 + 1/2)")
        ->each([&](const std::string&) { mc_theta_set = true; });
    mc->add_option("--hall-c", mc_hall_c, "good-set width multiplier")->capture_default_str();

    // bounds
    GridOptions bounds_grid;
    OutputOptions bounds_out;
    CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bound table");
    add_grid_options(bounds, bounds_grid);
    add_output_options(bounds, bounds_out);

    // qhalf
    GridOptions qhalf_grid;
    OutputOptions qhalf_out;
    std::string qhalf_method = "stam";
    std::uint64_t qhalf_max_q = std::uint64_t(1) << 20, qhalf_trials = 20000, qhalf_seed = 1;
    CLI::App* qhalf = app.add_subcommand("qhalf", "Smallest q reaching advantage 1/2");
    add_grid_options(qhalf, qhalf_grid, /*q_required=*/false);
    add_output_options(qhalf, qhalf_out);
    qhalf->add_option("--method", qhalf_method, "Bound or mc-lr")
        ->check(CLI::IsMember({"birthday", "birthday_upper", "hall", "stam", "small_m", "large_m",
                               "mc-lr"}))
        ->capture_default_str();
    qhalf->add_option("--max-q", qhalf_max_q, "Search cap for mc-lr")->capture_default_str();
    qhalf->add_option("--trials", qhalf_trials, "Trials per world for mc-lr")
        ->capture_default_str();
    qhalf->add_option("--seed", qhalf_seed, "Base seed for mc-lr")->capture_default_str();

    // verify
    OutputOptions verify_out;
    std::string verify_suite = "all";
    td::verify::VerifyOptions vopts;
    std::string verify_nm = "1,2", verify_q = "2..6";
    CLI::App* verify = app.add_subcommand("verify", "Run invariant and acceptance suites");
    add_output_options(verify, verify_out);
    verify->add_option("--suite", verify_suite, "Suite name or 'all'")->capture_default_str();
    verify->add_option("--n-m,--nm", verify_nm, "n-m values for the moments suite")
        ->capture_default_str();
    verify->add_option("--q", verify_q, "q range for the moments suite")->capture_default_str();
    verify->add_option("--trials", vopts.trials, "Trials per world for MC suites")
        ->capture_default_str();
    verify->add_option("--seed", vopts.seed, "Base seed for MC suites")->capture_default_str();
    verify->add_option("--cli", vopts.cli_path, "Binary to respawn for determinism checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;  // --help/--version exit 0
    }

    try {
        if (exact->parsed()) return cmd_exact(exact_grid, exact_out, exact_limit);
        if (mc->parsed())
            return cmd_mc(mc_grid, mc_out, mc_kind, mc_trials, mc_seed, mc_theta, mc_theta_set,
                          mc_hall_c);
        if (bounds->parsed()) return cmd_bounds(bounds_grid, bounds_out);
        if (qhalf->parsed())
            return cmd_qhalf(qhalf_grid, qhalf_out, qhalf_method, qhalf_max_q, qhalf_trials,
                             qhalf_seed);
        if (verify->parsed()) {
            std::vector<std::uint64_t> nms = parse_grid(verify_nm);
            vopts.nm_values.assign(nms.begin(), nms.end());
            std::vector<std::uint64_t> qs = parse_grid(verify_q);
            vopts.q_lo = qs.front();
            vopts.q_hi = qs.back();
            return cmd_verify(verify_out, verify_suite, vopts);
        }
    } catch (const td::params_error& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRowFailure;
    }
    return kExitUsage;
}
