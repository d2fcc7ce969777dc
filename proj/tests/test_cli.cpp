#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef POTSIG_CLI_PATH
#error "POTSIG_CLI_PATH must point at the potsig binary"
#endif

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + POTSIG_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr)
        return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

bool has(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, Check) {
    auto a = run("check 3^6");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, "graphical=yes sigma=18 n=6\n");
    auto b = run("check 3,1");
    EXPECT_EQ(b.status, 1);
    EXPECT_EQ(b.out, "graphical=no sigma=4 n=2\n");
    auto c = run("check 4^7,0^1");
    EXPECT_EQ(c.status, 0);
    EXPECT_EQ(c.out, "graphical=yes sigma=28 n=8\n");
    EXPECT_EQ(run("check 3,x").status, 2);
    EXPECT_EQ(run("check 1,2").status, 2);
    EXPECT_EQ(run("check").status, 2);
}

TEST(Cli, PotentialBothOnCubicSix) {
    auto r = run("potential 3^6 --pattern k4e --engine both");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out,
              "sequence=3,3,3,3,3,3\n"
              "n=6 sigma=18\n"
              "pattern=k4e\n"
              "engine=both\n"
              "oracle=NO realizations_examined=70\n"
              "constructive=EXCEPTIONAL\n"
              "engines=agree\n"
              "verdict=EXCEPTIONAL\n");
}

TEST(Cli, PotentialConstructiveTrace) {
    auto r = run("potential 4^1,3^5,1^1 --pattern k4e --engine constructive --trace");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "verdict=YES\n"));
    EXPECT_TRUE(has(r.out, "trace:\ncase=ODD_CASE1 n=7 sigma=20 action=fixture fixture=F1\nwitness:\n"));
    EXPECT_TRUE(has(r.out, "witness:\n7 10\n"));
    EXPECT_TRUE(has(r.out, "embedding="));
}

TEST(Cli, PotentialOracleWitness) {
    auto r = run("potential 3^8 --pattern k4e");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "verdict=YES\nwitness:\n8 12\n"));
    auto no = run("potential 2^4 --pattern k4e");
    EXPECT_EQ(no.status, 1);
    EXPECT_TRUE(has(no.out, "verdict=NO\n"));
    auto below = run("potential 2^4 --engine constructive");
    EXPECT_EQ(below.status, 1);
    EXPECT_TRUE(has(below.out, "verdict=BELOW_THRESHOLD\n"));
}

TEST(Cli, PotentialJson) {
    auto r = run("potential 3^8 --engine both --format json");
    EXPECT_EQ(r.status, 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j["verdict"], "YES");
    EXPECT_EQ(j["engines_agree"], true);
    EXPECT_EQ(j["embedding"].size(), 4u);
    EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(Cli, PotentialErrors) {
    EXPECT_EQ(run("potential 2^12 --pattern k4e").status, 2);                     // over the cap
    EXPECT_EQ(run("potential 3^12 --pattern k4e --cap 12").status, 0);
    EXPECT_EQ(run("potential 3^12 --pattern k4e", "POTENTIAL_SIGMA_CAP=12").status, 0);
    EXPECT_EQ(run("potential 3^12 --pattern k4e --cap 10", "POTENTIAL_SIGMA_CAP=12").status, 2);
    EXPECT_EQ(run("potential 1,1,1").status, 2);                                  // not graphical
    EXPECT_EQ(run("potential 3^6 --pattern k4 --engine constructive").status, 2);
    EXPECT_EQ(run("potential 3^6 --engine fast").status, 2);
    EXPECT_EQ(run("potential 3^6 --pattern q7").status, 2);
    EXPECT_EQ(run("check 3^6", "POTENTIAL_SIGMA_CAP=abc").status, 2);
}

TEST(Cli, PatternFile) {
    auto path = std::filesystem::temp_directory_path() / "potsig_cli_pattern.txt";
    {
        std::ofstream out(path, std::ios::binary);
        out << "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n";
    }
    auto r = run("sigma --n 6 --pattern-file " + path.string());
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "pattern=custom\n"));
    EXPECT_TRUE(has(r.out, "computed_sigma=20\n"));
    std::filesystem::remove(path);
    EXPECT_EQ(run("sigma --n 6 --pattern-file /nonexistent/p.txt").status, 2);
}

TEST(Cli, Sigma) {
    auto a = run("sigma --pattern k4e --n 6");
    EXPECT_EQ(a.status, 0);
    EXPECT_TRUE(has(a.out, "computed_sigma=20\nformula_sigma=20\nagrees=true\nextremal_sequences=3,3,3,3,3,3\n"));
    auto b = run("sigma --pattern c4 --n 5");
    EXPECT_EQ(b.status, 0);
    EXPECT_TRUE(has(b.out, "computed_sigma=14\nformula_sigma=none\n"));
    auto c = run("sigma --pattern k4e --n 9 --format json --workers 4");
    EXPECT_EQ(c.status, 0);
    auto j = nlohmann::ordered_json::parse(c.out);
    EXPECT_EQ(j["computed_sigma"], 26);
    EXPECT_EQ(j["formula_sigma"], 26);
    auto d = run("sigma --pattern k4 --n 5 --format csv");
    EXPECT_EQ(d.status, 0);
    EXPECT_TRUE(has(d.out, "n,pattern,computed_sigma,formula_sigma,agrees,n_extremal,elapsed_ms\n5,k4,18,,true,"));
    EXPECT_EQ(run("sigma --pattern k4e --n 12").status, 2);
    EXPECT_EQ(run("sigma --pattern k4e --n 3").status, 2);
    EXPECT_EQ(run("sigma --pattern k4e").status, 2);
}

TEST(Cli, Verify) {
    auto dir = std::filesystem::temp_directory_path();
    auto json_path = (dir / "potsig_verify.json").string();
    auto csv_path = (dir / "potsig_verify.csv").string();
    auto r = run("verify --n 4..9 --workers 4 --json " + json_path + " --csv " + csv_path);
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "all rows agree\n"));
    std::ifstream jin(json_path);
    auto j = nlohmann::ordered_json::parse(jin);
    std::vector<long> thresholds;
    for (const auto& row : j["rows"])
        thresholds.push_back(row["computed_sigma"]);
    EXPECT_EQ(thresholds, (std::vector<long>{10, 14, 20, 20, 22, 26}));
    EXPECT_EQ(j["all_agree"], true);
    std::ifstream cin(csv_path);
    std::string header;
    std::getline(cin, header);
    EXPECT_EQ(header, "n,pattern,computed_sigma,formula_sigma,agrees,n_extremal,elapsed_ms");
    std::filesystem::remove(json_path);
    std::filesystem::remove(csv_path);

    auto six = run("verify --n 6 --format json");
    EXPECT_EQ(six.status, 0);
    auto j6 = nlohmann::ordered_json::parse(six.out);
    EXPECT_EQ(j6["rows"][0]["exceptional"], nlohmann::ordered_json::array({"3,3,3,3,3,3"}));

    auto four = run("verify --n 4 --format json");
    EXPECT_EQ(four.status, 0);
    auto j4 = nlohmann::ordered_json::parse(four.out);
    EXPECT_TRUE(j4["rows"][0]["exceptional"].empty());
    EXPECT_EQ(j4["rows"][0]["cross_checked_from_sigma"], 10);

    EXPECT_EQ(run("verify --n 9..4").status, 2);
    EXPECT_EQ(run("verify --n 3").status, 2);
    EXPECT_EQ(run("verify --n 11").status, 2);
}
