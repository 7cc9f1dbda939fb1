#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "vtergm/cli.hpp"
#include "vtergm/io.hpp"

using namespace vtergm;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vtergm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult invoke(std::vector<std::string> args, bool with_dir = true) {
    if (with_dir) args.insert(args.begin(), {"--out-dir", dir_.string()});
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string data(const std::string& name) {
    return (fs::path(VTERGM_TEST_DATA) / name).string();
  }

  json read_json(const std::string& name) { return json::parse(read_text_file(dir_ / name)); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RateAnchor) {
  const auto r = invoke({"rate", "--theta", "0.6931", "--lambda", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("a_star").get<double>(), 0.5, 1e-4);
  EXPECT_EQ(j.at("inputs").at("theta"), 0.6931);
  EXPECT_TRUE(j.contains("formula"));
  EXPECT_EQ(read_json("rate.json"), j);
  const auto m = read_json("rate.manifest.json");
  EXPECT_EQ(m.at("subcommand"), "rate");
  EXPECT_EQ(m.at("tool_version"), kToolVersion);
  EXPECT_EQ(m.at("outputs").at(0).at("fnv1a64"), file_digest(dir_ / "rate.json"));
}

TEST_F(CliTest, RatePowerLaw) {
  const auto r = invoke({"rate", "--alpha", "0.5", "--beta", "0.16666666666666666"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out).at("a_star").get<double>(), 1.0 / 16, 1e-12);
  EXPECT_EQ(invoke({"rate", "--alpha", "0.5", "--beta", "1"}).code, 3);
}

TEST_F(CliTest, EstimateFixture) {
  const auto r = invoke({"estimate", "--graph", data("triangle_plus_edge.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out).at("lambda_hat").get<double>(), 0.4, 1e-12);
  const auto bad = invoke({"estimate", "--n", "5", "--e", "3", "--vt", "3"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(json::parse(bad.err).at("error").at("kind"), "domain");
}

TEST_F(CliTest, DecomposeBowtie) {
  const auto r = invoke({"decompose", "--graph", data("bowtie.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("decomposition").at("config"), json({{"l1", 3}, {"l2", 2}, {"l31", 0}, {"l32", 0}}));
  EXPECT_TRUE(j.at("verification").at("valid").get<bool>());
  const auto check = invoke({"validate", "--graph", data("bowtie.txt"), "--decomposition",
                          (dir_ / "decomposition.json").string()});
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_EQ(invoke({"decompose", "--graph", data("triangle_plus_edge.txt")}).code, 3);
}

TEST_F(CliTest, ValidateRejectsBrokenDecomposition) {
  const fs::path bad = dir_ / "bad.json";
  write_text_file(bad, R"({"v1":[1,2,3],"v2":[4],"v31":[],"v32":[5],"w":[],"config":{"l1":3,"l2":1,"l31":0,"l32":1}})");
  const auto r = invoke({"validate", "--graph", data("bowtie.txt"), "--decomposition", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json::parse(r.out).at("decomposition").at("valid").get<bool>());
}

TEST_F(CliTest, SampleAndManifestReplay) {
  const auto r = invoke({"sample", "--n", "200", "--lambda", "1.5", "--model", "planted", "--a", "0.3",
                      "--seed", "99"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = read_json("graph.manifest.json");
  EXPECT_EQ(m.at("seed"), 99);
  for (const auto& arg : m.at("args")) EXPECT_NE(arg, "--out-dir");
  const auto v = invoke({"validate", "--manifest", (dir_ / "graph.manifest.json").string()});
  ASSERT_EQ(v.code, 0) << v.err << v.out;
  EXPECT_TRUE(json::parse(v.out).at("manifest").at("reproduced").get<bool>());
}

TEST_F(CliTest, TamperedArtifactFailsReplay) {
  ASSERT_EQ(invoke({"solve", "--q", "100"}).code, 0);
  auto m = read_json("solve.manifest.json");
  m["outputs"][0]["fnv1a64"] = "0000000000000000";
  write_text_file(dir_ / "solve.manifest.json", m.dump());
  EXPECT_EQ(invoke({"validate", "--manifest", (dir_ / "solve.manifest.json").string()}).code, 1);
}

TEST_F(CliTest, McmcChainsAndReplay) {
  const auto r = invoke({"mcmc", "--n", "40", "--lambda", "1", "--theta", "0.5", "--steps", "5000",
                      "--thinning", "50", "--chains", "2", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "trace.chain0.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "trace.chain1.csv"));
  const auto header = read_text_file(dir_ / "trace.chain0.csv").substr(0, 29);
  EXPECT_EQ(header, "step,v_t,e,dt_greedy,accepted");
  const auto v = invoke({"validate", "--manifest", (dir_ / "trace.manifest.json").string()});
  EXPECT_EQ(v.code, 0) << v.out;
  const auto f = invoke({"mcmc", "--n", "20", "--lambda", "1", "--alpha", "0.5", "--beta", "0.1",
                      "--steps", "1000", "--out", "functional.csv"});
  EXPECT_EQ(f.code, 0) << f.err;
  EXPECT_TRUE(fs::exists(dir_ / "functional.manifest.json"));
}

TEST_F(CliTest, EnumerateTable) {
  const auto r = invoke({"enumerate", "--n", "4", "--lambda", "2", "--theta", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_text_file(dir_ / "law.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "v_t,e,count,mass,tilted_linear");
  EXPECT_EQ(invoke({"enumerate", "--n", "8", "--lambda", "1"}).code, 4);
}

TEST_F(CliTest, SolveAndDomainErrors) {
  const auto r = invoke({"solve", "--q", "100"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("x1").get<double>() + j.at("x2").get<double>() + j.at("x3").get<double>(), 100, 1e-8);
  EXPECT_EQ(invoke({"solve", "--q", "0.5"}).code, 3);
  EXPECT_EQ(invoke({"sample", "--n", "10", "--lambda", "20"}).code, 3);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"rate", "--nonsense", "1"}).code, 2);
  EXPECT_EQ(invoke({"sample", "--lambda", "1"}).code, 2);
  EXPECT_EQ(invoke({"mcmc", "--n", "10", "--lambda", "1", "--theta", "1", "--alpha", "0.5",
                 "--steps", "10"})
                .code,
            2);
  const auto r = invoke({"sample", "--n", "abc", "--lambda", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err).at("error").at("kind"), "usage");
}

TEST_F(CliTest, ParseErrorsAreDomainExit) {
  const fs::path bad = dir_ / "loop.txt";
  write_text_file(bad, "3\n3 3\n");
  const auto r = invoke({"validate", "--graph", bad.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.err).at("error").at("kind"), "parse");
}

TEST_F(CliTest, ResourceGuardOnExactPacking) {
  const fs::path g = dir_ / "sun.txt";
  write_text_file(g, "9\n1 2\n1 3\n2 3\n1 4\n1 5\n4 5\n2 6\n2 7\n6 7\n3 8\n3 9\n8 9\n");
  EXPECT_EQ(invoke({"validate", "--graph", g.string(), "--exact-cap", "1"}).code, 4);
  EXPECT_EQ(invoke({"validate", "--graph", g.string()}).code, 0);
}

TEST_F(CliTest, HelpAndVersion) {
  const auto h = invoke({"--help"}, false);
  EXPECT_EQ(h.code, 0);
  for (const char* sub : {"sample", "mcmc", "rate", "solve", "estimate", "enumerate", "decompose", "validate"})
    EXPECT_NE(h.out.find(sub), std::string::npos) << sub;
  EXPECT_EQ(invoke({"--version"}, false).out, std::string(kToolVersion) + "\n");
}

TEST_F(CliTest, OutputDirFromEnvironment) {
  ::setenv("VTERGM_OUTPUT_DIR", dir_.c_str(), 1);
  const auto r = invoke({"solve", "--q", "20", "--out", "env.json"}, false);
  ::unsetenv("VTERGM_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "env.json"));
  EXPECT_TRUE(fs::exists(dir_ / "env.manifest.json"));
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = VTERGM_CLI_PATH;
  const std::string quiet = " >/dev/null 2>&1";
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + quiet).c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("--out-dir " + dir_.string() + " rate --theta 0.1"), 0);
  EXPECT_EQ(status("--out-dir " + dir_.string() + " rate --theta x"), 2);
  EXPECT_EQ(status("--out-dir " + dir_.string() + " rate --theta 0.1 --lambda -1"), 3);
  EXPECT_EQ(status("--out-dir " + dir_.string() + " enumerate --n 9 --lambda 1"), 4);
}
