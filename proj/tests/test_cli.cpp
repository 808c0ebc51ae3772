#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <cstdlib>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CUSPIDAL_BIN) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("catalog command") {
    SECTION("n = 5 rank 1 lists ten classes, three h-compatible") {
        const auto r = run_cli("catalog --n 5 --rank 1");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["command"] == "catalog");
        REQUIRE(doc["records"]["classes"].size() == 10);
        int hcomp = 0;
        for (const auto& row : doc["records"]["classes"]) hcomp += row["h_compatible"] ? 1 : 0;
        REQUIRE(hcomp == 3);
        REQUIRE(doc["parameters"]["h_compatible_count"] == 3);
    }
    SECTION("n = 4 rank 0 has no h-compatible class") {
        const auto r = run_cli("catalog --n 4 --rank 0");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["records"]["classes"].size() == 4);
        for (const auto& row : doc["records"]["classes"]) REQUIRE(row["h_compatible"] == false);
    }
    SECTION("json output carries the full schema") {
        const auto r = run_cli("catalog --n 3 --rank 1 --format json");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        for (const char* key : {"command", "parameters", "records", "metadata"})
            REQUIRE(doc.contains(key));
        REQUIRE(doc["metadata"].contains("versions"));
        for (const auto& row : doc["records"]["classes"])
            for (const char* key : {"k", "l", "h_compatible", "p_star", "dim_n_cap_h", "dim_u",
                                    "dual_k", "dual_l"})
                REQUIRE(row.contains(key));
    }
    SECTION("bad n is a usage error") {
        REQUIRE(run_cli("catalog --n 2 --rank 1").exit_code == 64);
    }
}

TEST_CASE("convergence command") {
    SECTION("h-compatible class with a dominating profile converges") {
        const auto r = run_cli("convergence --n 5 --k 3 --l 3 --profile m=8");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["records"]["verdict"][0]["status"] == "convergent");
        REQUIRE(doc["records"]["verdict"][0]["prediction"] == "must_converge");
        REQUIRE(doc["records"]["schedule"].size() >= 6);
    }
    SECTION("schwartz power above the threshold diverges") {
        const auto r = run_cli("convergence --n 5 --k 2 --l 2 --profile nu=-1.25");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["records"]["verdict"][0]["status"] == "divergent");
        REQUIRE(doc["records"]["verdict"][0]["prediction"] == "must_diverge");
    }
    SECTION("boundary exponent reports an unknown prediction") {
        const auto r = run_cli("convergence --n 5 --k 3 --l 3 --profile nu=-1");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["records"]["verdict"][0]["prediction"] == "unknown");
    }
    SECTION("an exhausted schedule is inconclusive, exit 2") {
        const auto r = run_cli("convergence --n 4 --k 3 --l 3 --profile nu=-1.25 --radii 2,4,8,16,32");
        REQUIRE(r.exit_code == 2);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["records"]["verdict"][0]["status"] == "inconclusive");
    }
    SECTION("rank 0 form without --l") {
        const auto r = run_cli("convergence --n 3 --k 2 --profile nu=-1 --mc");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["parameters"]["rank"] == 0);
        REQUIRE(doc["records"]["verdict"][0]["status"] == "convergent");
        REQUIRE(doc["records"].contains("monte_carlo"));
    }
}

TEST_CASE("hc command") {
    SECTION("odd n produces a limit row within tolerance") {
        const auto r = run_cli("hc --n 3 --k 2 --profile nu=-1 --s -2:8:1");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        REQUIRE(doc["records"]["series"].size() == 11);
        REQUIRE(doc["records"]["limit"].size() == 1);
        REQUIRE(doc["records"]["limit"][0]["rel_diff"].get<double>() < 0.02);
        REQUIRE(doc["records"]["limit"][0]["gap_decreasing"] == true);
    }
    SECTION("a class outside P_h is rejected as usage") {
        REQUIRE(run_cli("hc --n 4 --k 2 --profile m=10 --s -2:2:1").exit_code == 64);
    }
}

TEST_CASE("verify command and determinism") {
    SECTION("quick verify passes") {
        const auto r = run_cli("verify --n-max 3 --quick");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        for (const auto& row : doc["records"]["families"]) REQUIRE(row["pass"] == true);
    }
    SECTION("same seed reproduces the report byte for byte") {
        const auto a = run_cli("verify --n-max 3 --quick --seed 17");
        const auto b = run_cli("verify --n-max 3 --quick --seed 17");
        REQUIRE(a.exit_code == 0);
        REQUIRE(a.out == b.out);
    }
}

TEST_CASE("output plumbing") {
    SECTION("csv emits one file per record type") {
        const std::string prefix = "/tmp/cuspidal_cli_test";
        const auto r = run_cli("catalog --n 4 --rank 1 --format csv --output " + prefix);
        REQUIRE(r.exit_code == 0);
        const std::string csv = slurp(prefix + "_classes.csv");
        REQUIRE(csv.rfind("k,l,h_compatible,p_star,dim_n_cap_h,dim_u,dual_k,dual_l", 0) == 0);
        REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 7); // header + 6 classes
    }
    SECTION("unknown flags exit with the usage code") {
        REQUIRE(run_cli("catalog --n 4 --rank 1 --definitely-not-a-flag").exit_code == 64);
        REQUIRE(run_cli("frobnicate").exit_code == 64);
    }
    SECTION("worker count does not change the report") {
        const std::string cmd = "hc --n 3 --k 2 --profile nu=-1 --s 0:6:2";
        setenv("CUSPIDAL_THREADS", "1", 1);
        const auto one = run_cli(cmd);
        setenv("CUSPIDAL_THREADS", "3", 1);
        const auto three = run_cli(cmd);
        unsetenv("CUSPIDAL_THREADS");
        REQUIRE(one.exit_code == 0);
        REQUIRE(one.out == three.out);
    }
    SECTION("timestamps only appear when requested") {
        const auto bare = run_cli("catalog --n 3 --rank 0");
        REQUIRE_FALSE(nlohmann::json::parse(bare.out)["metadata"].contains("timestamp"));
        const auto stamped = run_cli("catalog --n 3 --rank 0 --stamp 2026-01-01T00:00:00Z");
        REQUIRE(nlohmann::json::parse(stamped.out)["metadata"]["timestamp"] ==
                "2026-01-01T00:00:00Z");
    }
}
