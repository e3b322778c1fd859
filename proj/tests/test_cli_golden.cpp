// End-to-end checks of the installed CLI binary: byte-stable output against
// golden files (runtime fields normalized), the exit-code contract, and the
// bundled verification suites. Locations come from the environment:
//   DIFFPOW_CLI       path to the binary
//   DIFFPOW_SESSIONS  directory with .dps session files
//   DIFFPOW_GOLDEN    directory with expected outputs
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout and stderr interleaved
};

std::string env_or_die(const char* name) {
    const char* v = std::getenv(name);
    REQUIRE_MESSAGE(v != nullptr, "environment variable " << name << " not set");
    return v;
}

RunResult run_cli(const std::string& args) {
    std::string cmd = env_or_die("DIFFPOW_CLI") + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

std::string session(const std::string& file) {
    return "--input " + env_or_die("DIFFPOW_SESSIONS") + "/" + file;
}

std::string read_golden(const std::string& file) {
    std::ifstream in(env_or_die("DIFFPOW_GOLDEN") + "/" + file, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Wall-clock readings are the one nondeterministic field; pin them to zero.
std::string normalize(const std::string& s) {
    static const std::regex runtime("\"runtime_ms\": [0-9]+");
    return std::regex_replace(s, runtime, "\"runtime_ms\": 0");
}

void check_golden(const std::string& args, const std::string& golden, int want_exit) {
    RunResult r = run_cli(args);
    CHECK(r.exit_code == want_exit);
    CHECK(normalize(r.output) == read_golden(golden));
}

}  // namespace

TEST_CASE("golden outputs are byte-stable") {
    check_golden("member mixed " + session("zx2.dps") + " --n 3 --f \"2*x\"",
                 "member_mixed_px.txt", 1);
    check_golden("member mixed " + session("zx2.dps") + " --n 3 --f \"2*x\" --format json",
                 "member_mixed_px.json", 1);
    check_golden("member symbolic " + session("zx2.dps") + " --n 2 --f \"x^2\"",
                 "member_symbolic_x2.txt", 0);
    check_golden("gb " + session("z4x.dps"), "gb_z4x.txt", 0);
    check_golden("colon " + session("z4x.dps") + " --f 2", "colon_z4x.txt", 0);
    check_golden("equiv mixed " + session("zx2.dps") + " --n 2 --format json",
                 "equiv_mixed_n2.json", 0);
}

TEST_CASE("repeat runs are deterministic") {
    std::string args = "equiv mixed " + session("zx2.dps") + " --n 2 --seed 7 --format json";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(normalize(a.output) == normalize(b.output));
}

TEST_CASE("exit-code contract on bad input") {
    // missing session file
    RunResult r = run_cli("member symbolic --input /nonexistent.dps --n 1 --f x");
    CHECK(r.exit_code == 2);

    // parse error names the line
    r = run_cli("gb " + session("bad_lift.dps"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 3") != std::string::npos);
    CHECK(r.output.find("Frobenius") != std::string::npos);

    // empty file: the ring declaration is mandatory
    r = run_cli("gb " + session("empty.dps"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("ring") != std::string::npos);

    // malformed polynomial flag
    r = run_cli("member symbolic " + session("zx2.dps") + " --n 1 --f \"x +\"");
    CHECK(r.exit_code == 2);

    // flag validation: --n missing
    r = run_cli("member symbolic " + session("zx2.dps") + " --f x");
    CHECK(r.exit_code == 2);

    // unknown equivalence kind
    r = run_cli("equiv sideways " + session("zx2.dps") + " --n 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("budget exhaustion exits 3") {
    RunResult r = run_cli("equiv mixed " + session("zx2.dps") + " --n 3 --budget 50");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("budget") != std::string::npos);
}

TEST_CASE("verification suites: clean pass with JSON schema") {
    RunResult r = run_cli("verify-paper --format json");
    CHECK(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("all_pass") == true);
    const auto& suites = doc.at("suites");
    CHECK(suites.size() == 11);
    for (const auto& suite : suites) {
        CHECK(suite.at("pass") == true);
        CHECK(suite.at("checks").size() > 0);
    }
}

TEST_CASE("verification suites: an injected defect turns the run red") {
    RunResult r = run_cli("verify-paper --inject-failure base-example");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("base-example") != std::string::npos);
    CHECK(r.output.find("FAIL") != std::string::npos);

    RunResult unknown = run_cli("verify-paper --inject-failure no-such-suite");
    CHECK(unknown.exit_code == 2);
}
