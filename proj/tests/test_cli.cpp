// Copyright 2026 The elldiv authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cstdio>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "json.hpp"

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(ELLDIV_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

using nlohmann::json;

}  // namespace

TEST_CASE("cli divide on the F_5 toy curve") {
    auto r = run_cli("divide --p 5 --a -1 --b 0 --ell 2 --q 0,0 --json");
    REQUIRE(r.status == 0);
    auto j = json::parse(r.out);
    CHECK(j["in_image"] == true);
    REQUIRE(j["preimages"].size() == 4);
    std::set<std::pair<std::string, std::string>> pts, expect{
        {"2", "1"}, {"2", "4"}, {"3", "2"}, {"3", "3"}};
    std::set<std::pair<int, int>> labels;
    for (const auto& e : j["preimages"]) {
        pts.insert({e["x"].get<std::string>(), e["y"].get<std::string>()});
        labels.insert({e["label"][0].get<int>(), e["label"][1].get<int>()});
    }
    CHECK(pts == expect);
    CHECK(labels.size() == 4);
}

TEST_CASE("cli check-image reports non-membership with exit 0") {
    auto r = run_cli("check-image --p 5 --a -1 --b 0 --ell 2 --q 2,1 --json");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["in_image"] == false);
}

TEST_CASE("cli divide accepts a basis override and negative inputs") {
    auto r = run_cli("divide --p 5 --a -1 --b 0 --ell 2 --q 0,-0 --basis 1,0,4,0 --json");
    REQUIRE(r.status == 0);
    auto j = json::parse(r.out);
    CHECK(j["in_image"] == true);
    CHECK(j["preimages"].size() == 4);
    // canonical output in [0, p)
    for (const auto& e : j["preimages"]) {
        CHECK(e["x"].get<std::string>().find('-') == std::string::npos);
        CHECK(e["y"].get<std::string>().find('-') == std::string::npos);
    }
}

TEST_CASE("cli division-poly emits the coefficient array") {
    auto r = run_cli("division-poly --p 1000003 --a 1 --b 1 --n 3 --json");
    REQUIRE(r.status == 0);
    auto j = json::parse(r.out);
    // psi_3 = 3x^4 + 6ax^2 + 12bx - a^2, constant-first
    std::vector<std::string> expect{"1000002", "12", "6", "0", "3"};
    CHECK(j["psi"].get<std::vector<std::string>>() == expect);
}

TEST_CASE("cli miller and torsion-basis run") {
    auto r = run_cli("torsion-basis --p 5 --a -1 --b 0 --ell 2 --json");
    REQUIRE(r.status == 0);
    auto j = json::parse(r.out);
    CHECK(j["extension_degree"] == 1);
    std::string x1 = j["w1"]["x"].get<std::string>();
    std::string y1 = j["w1"]["y"].get<std::string>();
    auto m = run_cli("miller --p 5 --a -1 --b 0 --ell 2 --w " + x1 + "," + y1 + " --json");
    REQUIRE(m.status == 0);
    auto mj = json::parse(m.out);
    // h_W = x - gamma: u = [-gamma, 1], v = []
    CHECK(mj["u"].size() == 2);
    CHECK(mj["u"][1] == "1");
    CHECK(mj["v"].empty());
}

TEST_CASE("cli ladder prints levels and trace candidates") {
    auto r = run_cli("ladder --p 5 --a -1 --b 0 --ell 2 --k-max 2 --json");
    REQUIRE(r.status == 0);
    auto j = json::parse(r.out);
    CHECK(j["level"] == 2);
    CHECK(j["trace_modulus"] == "4");
    // a_p = -2, so a_p mod 4 = 2 must be among the candidates
    bool found = false;
    for (const auto& c : j["trace_candidates"])
        if (c == "2") found = true;
    CHECK(found);
}

TEST_CASE("cli exit codes: usage = 2, mathematical not-found = 1") {
    CHECK(run_cli("divide --p 4 --a 1 --b 1 --ell 2 --q 0,1 --json").status == 2);
    CHECK(run_cli("divide --p 5 --a -1 --b 0 --ell 2 --q 1,1 --json").status == 2);
    CHECK(run_cli("divide --p 5 --a -1 --b 0 --ell 2 --q bogus --json").status == 2);
    // 5-torsion of this curve is nowhere rational within --max-ext 1
    CHECK(run_cli("divide --p 7 --a 1 --b 3 --ell 5 --q 0,0 --max-ext 1 --json").status ==
          1);
    CHECK(run_cli("").status != 0);
}

TEST_CASE("cli selftest passes") {
    CHECK(run_cli("selftest").status == 0);
}

TEST_CASE("cli output is byte-identical for a fixed seed") {
    for (const std::string& cmd :
         {std::string("divide --p 13 --a 12 --b 0 --ell 2 --q 5,4 --seed 42 --json"),
          std::string("torsion-basis --p 7 --a 1 --b 3 --ell 3 --seed 7 --json"),
          std::string("ladder --p 5 --a -1 --b 0 --ell 2 --k-max 2 --seed 9 --json")}) {
        auto r1 = run_cli(cmd);
        auto r2 = run_cli(cmd);
        REQUIRE(r1.status == 0);
        CHECK(r1.out == r2.out);
    }
}
