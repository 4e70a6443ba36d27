#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "anglerank/report.hpp"

using namespace anglerank;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ANGLERANK_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf;
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

} // namespace

TEST_CASE("analyze by label produces the full report") {
    RunResult r = run_cli("analyze 4.3.ab_c_ae_ac --rho 169");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["label"] == "4.3.ab_c_ae_ac");
    CHECK(rep["g"] == 4);
    CHECK(rep["ordinary"] == true);
    CHECK(rep["irreducible"] == true);
    CHECK(rep["geometrically_simple"]["value"] == true);
    CHECK(rep["numerical"]["m"] == 4);
    CHECK(rep["numerical"]["s"] == 1);
    CHECK(rep["numerical"]["rank"] == 3);
    CHECK(rep["certified"]["upper_bound"] == 3);
    bool has_positive = false;
    for (const auto& cert : rep["certified"]["certificates"])
        if (cert["conclusion"] == "nontrivial-relation-exists") has_positive = true;
    CHECK(has_positive);
}

TEST_CASE("analyze by coefficients: rank0 for T^2+3 over q=3") {
    RunResult r = run_cli("analyze 3,0,1 --q 3 --rho 169");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["g"] == 1);
    CHECK(rep["numerical"]["rank"] == 0);
    CHECK(rep["certified"]["supersingular_shortcircuit"] == true);
    CHECK(rep["certified"]["upper_bound"] == 0);
    // relation (2, -1): 2 t_1 - 1 = 0
    REQUIRE(rep["numerical"]["relations"].size() == 1);
    CHECK(rep["numerical"]["relations"][0][0] == "2");
    CHECK(rep["numerical"]["relations"][0][1] == "-1");
}

TEST_CASE("analyze rejects bad input with exit code 2") {
    CHECK(run_cli("analyze 3,0,1").exit_code == 2);      // missing --q
    CHECK(run_cli("analyze 5,-1,1 --q 3").exit_code == 2); // functional equation
    CHECK(run_cli("analyze 4.3.zzz").exit_code == 2);
}

TEST_CASE("analyze report passes the verifier") {
    // 2.2.a_b is T^4 + T^2 + 4: ordinary, irreducible, angle rank 1 with the
    // relation t1 + t2 = 1, so the report carries a positive certificate
    RunResult r = run_cli("analyze 2.2.a_b --rho 169");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["numerical"]["rank"] == 1);
    CHECK(rep["certified"]["upper_bound"] == 1);
    CHECK(rep["geometrically_simple"]["value"] == false);
    std::string path = std::string(ANGLERANK_DATA_DIR) + "/tmp_report.json";
    {
        std::ofstream out(path);
        out << r.out;
    }
    RunResult v = run_cli("verify " + path);
    CHECK(v.exit_code == 0);
    std::remove(path.c_str());
}

TEST_CASE("analyze text mode and forced patterns") {
    RunResult r = run_cli("analyze 2.2.a_b --rho 169 --text --pattern 2:1,-1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("certified bound") != std::string::npos);
    CHECK(r.out.find("numerical rank     1") != std::string::npos);
}

TEST_CASE("verifier flags a corrupted report") {
    RunResult r = run_cli("analyze 1.3.ab --rho 169");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    rep["ordinary"] = !rep["ordinary"].get<bool>();
    std::string path = std::string(ANGLERANK_DATA_DIR) + "/tmp_report_bad.json";
    {
        std::ofstream out(path);
        out << rep.dump();
    }
    RunResult v = run_cli("verify " + path);
    CHECK(v.exit_code == 4);
    std::remove(path.c_str());
}

TEST_CASE("zeta on both paper curves") {
    RunResult r3 = run_cli("zeta \"3; 0; 0,1,0,0,0,2,0,1,1,1\"");
    REQUIRE(r3.exit_code == 0);
    json z3 = json::parse(r3.out);
    CHECK(z3["label"] == "4.3.ab_c_ae_ac");
    std::vector<std::string> expect3{"1", "-1", "2", "-4", "-2", "-12", "18", "-27", "81"};
    CHECK(z3["lpoly"].get<std::vector<std::string>>() == expect3);
    CHECK(z3["counts"][0] == 3);

    RunResult r5 = run_cli("zeta \"5; 0; 0,1,0,0,0,2,1,0,0,1\"");
    REQUIRE(r5.exit_code == 0);
    json z5 = json::parse(r5.out);
    CHECK(z5["label"] == "4.5.ab_c_ae_q");
    std::vector<std::string> expect5{"1", "-1", "2", "-4", "16", "-20", "50", "-125", "625"};
    CHECK(z5["lpoly"].get<std::vector<std::string>>() == expect5);
}

TEST_CASE("zeta rejects a genus-0 curve") {
    RunResult r = run_cli("zeta \"3; 0; 0,1\"");
    CHECK(r.exit_code == 2);
}

TEST_CASE("survey g=1 q=2 emits five rows plus summary") {
    RunResult r = run_cli("survey 1 2 --rho 169");
    REQUIRE(r.exit_code == 0);
    std::vector<json> lines;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) lines.push_back(json::parse(line));
    REQUIRE(lines.size() == 6);
    CHECK(lines.back()["matched"] == 5);
    CHECK(lines.back()["total_enumerated"] == 5);
    CHECK(lines[0]["label"] == "1.2.a");
}

TEST_CASE("search-curves finds the F3 curve from its label") {
    std::string path = std::string(ANGLERANK_DATA_DIR) + "/tmp_targets.json";
    {
        std::ofstream out(path);
        out << "[\"4.3.ab_c_ae_ac\"]";
    }
    RunResult r = run_cli("search-curves 3 " + path + " --threads 2");
    REQUIRE(r.exit_code == 0);
    std::remove(path.c_str());
    std::istringstream is(r.out);
    std::string line, last;
    bool found_curve = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("curve") && j["curve"] == "3; 0; 0,1,0,0,0,2,0,1,1,1") found_curve = true;
        last = line;
    }
    CHECK(found_curve);
    json summary = json::parse(last);
    CHECK(summary["matches"].get<long>() > 0);
}

TEST_CASE("reproduce with corrupted curves fails with exit 4") {
    // negative control: wrong curves make the zeta claims fail immediately
    RunResult r = run_cli(
        "reproduce --rho 169 --f3-curve \"3; 0; 1,1,0,0,0,2,0,1,1,1\""
        " --f5-curve \"5; 0; 1,1,0,0,0,2,1,0,0,1\"");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("[FAIL]") != std::string::npos);
    CHECK(r.out.find("0/2 claims pass") != std::string::npos);
}
