#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef GG_CLI_PATH
#define GG_CLI_PATH "./gg"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(GG_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

RunResult run_env(const std::string& env, const std::string& args) {
    std::string cmd = env + " " + std::string(GG_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST_CASE("group command reports invariants") {
    auto r = run("group --group sym:3");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("\"order\": 6") != std::string::npos);
    REQUIRE(r.out.find("\"d\": 2") != std::string::npos);
    REQUIRE(r.out.find("(1 - 1/2^s)(1 - 3/3^s)") != std::string::npos);
}

TEST_CASE("graph and swap commands") {
    auto r = run("graph --group sym:3 --a 1 --b 1 --prune");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("\"edges\": 9") != std::string::npos);
    REQUIRE(r.out.find("\"connected\": true") != std::string::npos);

    auto dot = run("graph --group klein --a 1 --b 1 --prune --export dot");
    REQUIRE(dot.exit_code == 0);
    REQUIRE(dot.out.rfind("graph gamma {", 0) == 0);

    auto csv = run("graph --group klein --a 1 --b 1 --export csv");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(csv.out.rfind("side,tuple_code,degree", 0) == 0);

    auto sw = run("swap --group sym:3 --d 2");
    REQUIRE(sw.exit_code == 0);
    REQUIRE(sw.out.find("\"vertices\": 18") != std::string::npos);
    REQUIRE(sw.out.find("\"diameter\": 3") != std::string::npos);
}

TEST_CASE("exit codes: usage, assertion, cap") {
    REQUIRE(run("").exit_code == 2);                        // no subcommand
    REQUIRE(run("verify no-such-suite").exit_code == 2);    // UnknownSuite
    REQUIRE(run("group --group nosuch:1").exit_code == 2);  // UnknownFamily
    REQUIRE(run("graph --group cyclic:999999 --a 1 --b 3").exit_code == 3); // cap

    // non-usage library error (insufficient truncation) maps to 1
    auto lam = run("lambda --group sym:3 --max-level 4");
    REQUIRE(lam.exit_code == 0);
    std::ofstream("cli_short_family.json") << lam.out;
    REQUIRE(run("recover --family cli_short_family.json --all").exit_code == 1);
    std::remove("cli_short_family.json");
}

TEST_CASE("config precedence: flags > env > file > defaults") {
    std::ofstream("cli_test.conf") << "# comment\nmax_vertices = 10\n";
    REQUIRE(run("--config cli_test.conf graph --group sym:3 --a 1 --b 1").exit_code == 3);
    // env overrides file
    REQUIRE(run_env("GG_MAX_VERTICES=100000",
                    "--config cli_test.conf graph --group sym:3 --a 1 --b 1")
                .exit_code == 0);
    // flag overrides env
    REQUIRE(run_env("GG_MAX_VERTICES=10",
                    "graph --group sym:3 --a 1 --b 1 --max-vertices 100000")
                .exit_code == 0);
    REQUIRE(run_env("GG_MAX_VERTICES=10", "graph --group sym:3 --a 1 --b 1").exit_code == 3);
    std::remove("cli_test.conf");

    std::ofstream("cli_bad.conf") << "no_such_key = 5\n";
    REQUIRE(run("--config cli_bad.conf group --group sym:3").exit_code == 2);
    std::remove("cli_bad.conf");
}

TEST_CASE("lambda/recover round-trip through a file") {
    auto lam = run("lambda --group sym:3 --max-level 6");
    REQUIRE(lam.exit_code == 0);
    std::ofstream("cli_family.json") << lam.out;
    auto rec = run("recover --family cli_family.json --all");
    REQUIRE(rec.exit_code == 0);
    REQUIRE(rec.out.find("\"order\": 6") != std::string::npos);
    REQUIRE(rec.out.find("\"d\": 2") != std::string::npos);
    REQUIRE(rec.out.find("\"nilpotent\": false") != std::string::npos);
    REQUIRE(rec.out.find("\"frattini_order\": 1") != std::string::npos);
    std::remove("cli_family.json");
}

TEST_CASE("verify command emits JSON-lines and respects --groups") {
    auto r = run("verify lemma-tri --groups cyclic:2");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("\"suite\":\"lemma-tri\"") != std::string::npos);
    REQUIRE(r.out.find("exception case") != std::string::npos);

    // identical inputs yield byte-identical reports
    auto again = run("verify lemma-tri --groups cyclic:2");
    REQUIRE(again.out == r.out);

    // cap violations are per-group skips, not suite failures
    auto capped = run("verify edge-counts --groups cyclic:999999");
    REQUIRE(capped.exit_code == 0);
    REQUIRE(capped.out.find("\"status\":\"skip\"") != std::string::npos);
}

TEST_CASE("construct, crown, spread, tau commands") {
    auto s3 = run("spread --group sym:3");
    REQUIRE(s3.exit_code == 0);
    REQUIRE(s3.out.find("\"nonzero_spread\": true") != std::string::npos);
    REQUIRE(s3.out.find("\"psi\": 2") != std::string::npos);

    auto tau = run("tau --simple alt:5 --d 2");
    REQUIRE(tau.exit_code == 0);
    REQUIRE(tau.out.find("\"orbit_count\": 19") != std::string::npos);
    REQUIRE(tau.out.find("\"aut_order\": 120") != std::string::npos);

    REQUIRE(run("tau --simple sym:3 --d 2").exit_code == 2); // not simple
    REQUIRE(run("construct nosuch").exit_code == 2);
}

TEST_CASE("bench emits CSV with a machine header") {
    auto r = run("bench lattice");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("# gg bench lattice", 0) == 0);
    REQUIRE(r.out.find("task,group,order,subgroups,time_ms") != std::string::npos);
    REQUIRE(r.out.find("lattice,sym:5,120,156,") != std::string::npos);
    REQUIRE(run("bench nosuch").exit_code == 2);
}
