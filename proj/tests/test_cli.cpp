#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string quoted(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

RunResult run(const std::vector<std::string>& args, unsigned threads = 2) {
    const char* cli = std::getenv("TRUNCDIST_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "TRUNCDIST_CLI must point at the built binary");
    std::string cmd = "TRUNCDIST_THREADS=" + std::to_string(threads) + " " + quoted(cli);
    for (const auto& a : args) cmd += " " + quoted(a);
    cmd += " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("exact emits the advantage as decimal and rational") {
    RunResult r = run({"exact", "--n", "2", "--m", "1", "--q", "2", "--no-timing"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "n,m,q,advantage,advantage_rational,profiles,wall_ms"));
    CHECK(contains(r.output, "1/6"));
    CHECK(contains(r.output, "1.66666666666666666666666666667e-1"));
}

TEST_CASE("bounds row flags inapplicable bounds") {
    RunResult r = run({"bounds", "--n", "2", "--m", "1", "--q", "2"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "0.235702"));  // stam
    CHECK(contains(r.output, "0.25"));      // birthday upper
    CHECK(contains(r.output, "n/a"));       // small_m out of regime at m > n/3
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"exact", "--n", "2", "--m", "5", "--q", "2"}).exit_code == 2);   // m >= n
    CHECK(run({"exact", "--n", "2", "--m", "1", "--q", "9"}).exit_code == 2);   // q > 2^n
    CHECK(run({"exact", "--n", "2", "--m", "1"}).exit_code == 2);               // missing q
    CHECK(run({"exact", "--n", "2", "--badflag"}).exit_code == 2);
    CHECK(run({"nonsense"}).exit_code != 0);
}

TEST_CASE("size errors are reported per row with exit 1") {
    RunResult r = run({"exact", "--n", "8", "--m", "4", "--q", "64", "--limit", "10",
                       "--no-timing"});
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "error:"));
}

TEST_CASE("verify moments suite passes (spec surface)") {
    RunResult r = run({"verify", "--suite", "lemma1", "--n-m", "1,2", "--q", "2..6"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "pass"));
    CHECK_FALSE(contains(r.output, "FAIL"));
}

TEST_CASE("csv output is byte-identical across thread caps") {
    std::vector<std::string> args{"exact", "--n", "4..6", "--m", "1", "--q", "2..8",
                                  "--no-timing"};
    RunResult one = run(args, 1);
    RunResult many = run(args, 8);
    CHECK(one.exit_code == 0);
    CHECK(one.output == many.output);
    CHECK(contains(one.output, "\n"));
}

TEST_CASE("json output carries meta and is stable without timestamps") {
    std::vector<std::string> args{"mc",      "--distinguisher", "lr", "--n",     "6",
                                  "--m",     "2",               "--q", "16",     "--trials",
                                  "5000",    "--seed",          "11", "--format", "json",
                                  "--no-timestamp"};
    RunResult a = run(args, 1);
    RunResult b = run(args, 5);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(contains(a.output, "\"rows\""));
    CHECK(contains(a.output, "\"version\""));
    CHECK(contains(a.output, "\"seed\": 11"));
    CHECK_FALSE(contains(a.output, "timestamp"));
}

TEST_CASE("qhalf emits certificates") {
    RunResult r = run({"qhalf", "--n", "16", "--m", "0", "--method", "birthday"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "257"));
    CHECK(contains(r.output, "bound-certified"));

    RunResult na = run({"qhalf", "--n", "12", "--m", "2", "--method", "large_m"});
    CHECK(na.exit_code == 1);
    CHECK(contains(na.output, "not-applicable"));
}

TEST_CASE("q-pow2 grids expand to powers of two") {
    RunResult r = run({"bounds", "--n", "16", "--m", "4", "--q-pow2", "2..4"});
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "16,4,4,"));
    CHECK(contains(r.output, "16,4,8,"));
    CHECK(contains(r.output, "16,4,16,"));
}
