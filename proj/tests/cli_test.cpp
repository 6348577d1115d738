#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

#ifndef COISING_CLI_PATH
#error "COISING_CLI_PATH must point at the coising binary"
#endif

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(COISING_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    CmdResult result;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    EXPECT_TRUE(in.good()) << path;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("coising_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string out_flag() const { return "--out " + dir_.string(); }
    fs::path dir_;
};

TEST_F(CliTest, CatalogListsEveryGraph) {
    auto r = run_cli("catalog");
    EXPECT_EQ(r.exit_code, 0);
    for (const char* name : {"G13", "G17p", "G25p4", "G27", "G33p2", "G33p2_variant"})
        EXPECT_NE(r.output.find(name), std::string::npos) << name;
}

TEST_F(CliTest, SpectrumEmitsPolynomialJson) {
    auto r = run_cli("spectrum --catalog G13 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("states=8192"), std::string::npos);
    auto doc = nlohmann::json::parse(slurp(dir_ / "G13.spectrum.json"));
    EXPECT_EQ(doc["total"].get<std::string>(), "8192");
    EXPECT_EQ(doc["n"].get<int>(), 13);
    EXPECT_TRUE(fs::exists(dir_ / "spectrum.manifest.json"));
}

TEST_F(CliTest, SpectrumCompareReportsCoIsing) {
    auto r = run_cli("spectrum --catalog G13 --compare G13p " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("CO-ISING: true"), std::string::npos);
    auto r2 = run_cli("spectrum --catalog G13 --compare G17 " + out_flag());
    EXPECT_NE(r2.output.find("CO-ISING: false"), std::string::npos);
}

TEST_F(CliTest, BadPathsAndMissingFlagsExitTwo) {
    EXPECT_EQ(run_cli("spectrum /no/such/file.graph " + out_flag()).exit_code, 2);
    EXPECT_EQ(run_cli("spectrum " + out_flag()).exit_code, 2);
    EXPECT_EQ(run_cli("compose --g1 G13 --root1 1 " + out_flag()).exit_code, 2); // missing --g2
    EXPECT_EQ(run_cli("catalog --name G99 " + out_flag()).exit_code, 2);
}

TEST_F(CliTest, CheckSeededIsomorphicVariant) {
    auto r = run_cli("check G13 G13i --seed 5 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("co_ising=true"), std::string::npos);
    EXPECT_NE(r.output.find("isomorphic=true"), std::string::npos);
}

TEST_F(CliTest, SweepIsByteDeterministic) {
    const std::string graph = (dir_ / "ring6.graph").string();
    std::ofstream(graph) << "n 6\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n";
    const std::string args = "sweep " + graph + " --method dense --grid 0:1:3 --seed 9 " + out_flag();
    EXPECT_EQ(run_cli(args).exit_code, 0);
    auto first = slurp(dir_ / "ring6.curves.csv");
    EXPECT_EQ(run_cli(args).exit_code, 0);
    EXPECT_EQ(slurp(dir_ / "ring6.curves.csv"), first);
    EXPECT_NE(first.find("graph,observable,s_p,mean,ci_low,ci_high,embedding_id"), std::string::npos);
}

TEST_F(CliTest, MimicWritesGaugeRowsAndSummary) {
    const std::string graph = (dir_ / "p6.graph").string();
    std::ofstream(graph) << "n 6\n1 2\n2 3\n3 4\n4 5\n5 6\n";
    auto r = run_cli("mimic " + graph + " --sp 0.5 --gauges 5 --anneals 50 --seed 2 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    auto csv = slurp(dir_ / "p6.gauges.csv");
    EXPECT_EQ((int)std::count(csv.begin(), csv.end(), '\n'), 6); // header + 5 rows
    auto summary = nlohmann::json::parse(slurp(dir_ / "p6.mimic_summary.json"));
    EXPECT_TRUE(summary.contains("q2"));
    EXPECT_TRUE(summary["observables"].contains("energy_stderr"));
}

TEST_F(CliTest, JsonFormatEmitsCurveDocuments) {
    const std::string graph = (dir_ / "p4.graph").string();
    std::ofstream(graph) << "n 4\n1 2\n2 3\n3 4\n";
    auto r = run_cli("sweep " + graph + " --method dense --grid 0:1:3 --format json --seed 1 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    auto doc = nlohmann::json::parse(slurp(dir_ / "p4.curves.json"));
    ASSERT_EQ(doc.size(), 4u);
    EXPECT_EQ(doc[0]["observable"], "energy");
    EXPECT_EQ(doc[0]["points"].size(), 3u);
}

TEST_F(CliTest, ComputationFailuresExitOne) {
    // 30-cycle: one biconnected block beyond the enumeration cap
    const std::string graph = (dir_ / "cycle30.graph").string();
    {
        std::ofstream out(graph);
        out << "n 30\n";
        for (int v = 1; v <= 30; ++v) out << v << " " << (v % 30 + 1) << "\n";
    }
    auto r = run_cli("spectrum " + graph + " " + out_flag());
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.output.find("error"), std::string::npos);
}

TEST_F(CliTest, EmbedEmitsVerifiedAssignments) {
    auto r = run_cli("embed --catalog G13 --m 4 --k 2 --seed 3 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    auto doc = nlohmann::json::parse(slurp(dir_ / "G13.embedding0.json"));
    EXPECT_EQ(doc["graph"], "G13");
    EXPECT_EQ(doc["chimera_m"], 4);
    EXPECT_EQ(doc["assignment"].size(), 13u);
    EXPECT_TRUE(fs::exists(dir_ / "G13.embedding1.json"));
}

TEST_F(CliTest, SearchTreesFindsNothingSmall) {
    auto r = run_cli("search-trees --max-n 6 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    auto doc = nlohmann::json::parse(slurp(dir_ / "co_rooted_trees.json"));
    EXPECT_TRUE(doc.is_array());
    EXPECT_TRUE(doc.empty());
}

TEST_F(CliTest, DryRunWritesNothing) {
    auto r = run_cli("sweep --catalog G13 --dry-run " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, ScheduleFromEnvironment) {
    const std::string sched = (dir_ / "table.csv").string();
    std::ofstream(sched) << "s,A,B\n0,2,0\n1,0,2\n";
    const std::string graph = (dir_ / "p4.graph").string();
    std::ofstream(graph) << "n 4\n1 2\n2 3\n3 4\n";
    const std::string cmd =
        "COISING_SCHEDULE=" + sched + " " + std::string(COISING_CLI_PATH) + " sweep " + graph +
        " --method dense --grid 0:1:3 --seed 1 " + out_flag() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::array<char, 4096> buf;
    while (fread(buf.data(), 1, buf.size(), pipe) > 0) {
    }
    EXPECT_EQ(WEXITSTATUS(pclose(pipe)), 0);
    auto manifest = nlohmann::json::parse(slurp(dir_ / "sweep.manifest.json"));
    bool saw_schedule_digest = false;
    for (const auto& [key, value] : manifest["input_digests"].items())
        if (key.rfind("schedule:", 0) == 0) saw_schedule_digest = true;
    EXPECT_TRUE(saw_schedule_digest);
}

TEST_F(CliTest, DiscriminateSmallDense) {
    const std::string g1 = (dir_ / "path5.graph").string();
    const std::string g2 = (dir_ / "star5.graph").string();
    std::ofstream(g1) << "n 5\n1 2\n2 3\n3 4\n4 5\n";
    std::ofstream(g2) << "n 5\n1 2\n1 3\n1 4\n1 5\n";
    auto r = run_cli("discriminate " + g1 + " " + g2 + " --method dense --grid 0:1:5 --seed 4 " + out_flag());
    EXPECT_EQ(r.exit_code, 0);
    auto verdicts = nlohmann::json::parse(slurp(dir_ / "verdicts.json"));
    ASSERT_EQ(verdicts.size(), 1u);
    EXPECT_TRUE(verdicts[0]["distinguishable"].get<bool>());
    EXPECT_TRUE(fs::exists(dir_ / "discriminate.curves.csv"));
}

} // namespace
