#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli_app.hpp"

using namespace aprseq;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "aprseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(APRSEQ_SAMPLES_DIR) + "/matrices/" + name; }

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST(CliCompute, AprOfMatchingBlocks) {
  const auto r = run({"compute", sample("matching_blocks_2.txt"), "--seq", "apr"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "apr SNS")) << r.out;
}

TEST(CliCompute, ZeroMatrixAllSequences) {
  const auto r = run({"compute", sample("zero3.txt"), "--seq", "all"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "apr NN"));
  EXPECT_TRUE(contains(r.out, "epr NNN"));
  EXPECT_TRUE(contains(r.out, "qpr NNN"));
  EXPECT_TRUE(contains(r.out, "rank 0"));
}

TEST(CliCompute, OnesJson) {
  const auto r = run({"compute", sample("ones3.txt"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["apr"], "AN");
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(j["aprank"], 1);
  EXPECT_EQ(j["n"], 3);
}

TEST(CliCompute, Errors) {
  const auto one = run({"compute", std::string(APRSEQ_SAMPLES_DIR) + "/../tests/data/one_by_one.txt", "--seq", "apr"});
  EXPECT_EQ(one.code, 2);
  EXPECT_TRUE(contains(one.err, "undefined"));
  const auto bad = run({"compute", std::string(APRSEQ_SAMPLES_DIR) + "/../tests/data/asymmetric.txt"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(json::parse(bad.err)["exit_code"], 2);
  EXPECT_EQ(run({"compute", sample("zero3.txt"), "--seq", "xyz"}).code, 2);
}

TEST(CliClassify, Verdicts) {
  const auto snsn = run({"classify", "SNSN", "--field", "any", "--json"});
  EXPECT_EQ(snsn.code, 0);
  EXPECT_EQ(json::parse(snsn.out)["attainable"], true);
  const auto ana = run({"classify", "ANA", "--field", "char0"});
  EXPECT_EQ(ana.code, 1);
  EXPECT_TRUE(contains(ana.out, "not attainable"));
  const auto aas = run({"classify", "AAS", "--field", "char0"});
  EXPECT_EQ(aas.code, 0);
  EXPECT_TRUE(contains(aas.out, "AAS: attainable"));
  const auto any = run({"classify", "AAS", "--field", "any", "--json"});
  EXPECT_EQ(any.code, 0);
  EXPECT_TRUE(json::parse(any.out)["attainable"].is_null());
  EXPECT_EQ(run({"classify", "SSNS", "--field", "noA"}).code, 1);
  EXPECT_EQ(run({"classify", "SAN", "--field", "noA"}).code, 2);
  EXPECT_EQ(run({"classify", "SXN"}).code, 2);
}

TEST(CliRealize, Words) {
  const auto an = run({"realize", "AN"});
  EXPECT_EQ(an.code, 0);
  EXPECT_TRUE(contains(an.out, "verified: apr = AN"));
  const auto s = run({"realize", "S", "--json"});
  EXPECT_EQ(s.code, 1);
  const auto j = json::parse(s.out);
  EXPECT_EQ(j["status"], "rejected");
  EXPECT_TRUE(contains(j["reason"].get<std::string>(), "length-1 S unattainable"));
  const auto a = run({"realize", "ASN", "--seed", "7", "--json"});
  const auto b = run({"realize", "ASN", "--seed", "7", "--json"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["verified"], true);
  EXPECT_EQ(run({"realize", "ASN", "--max-retries", "0"}).code, 2);
}

TEST(CliRealize, WritesFile) {
  const auto path = (std::filesystem::temp_directory_path() / "aprseq_cli_realize.txt").string();
  const auto r = run({"realize", "SSN", "--out", path});
  EXPECT_EQ(r.code, 0);
  const auto back = run({"compute", path, "--seq", "apr"});
  EXPECT_TRUE(contains(back.out, "apr SSN"));
  std::filesystem::remove(path);
}

TEST(CliCensus, SmallReport) {
  const auto r = run({"census", "--field", "gf:2", "--n", "2", "--threads", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["matrix_count"], 8);
  EXPECT_TRUE(j["apr"].contains("A"));
  EXPECT_TRUE(j["apr"].contains("N"));
  EXPECT_FALSE(j["apr"].contains("S"));
  EXPECT_EQ(j["ok"], true);
  EXPECT_TRUE(j["apr"]["A"].contains("witness"));
  const auto bare = json::parse(run({"census", "--field", "gf:2", "--n", "2", "--no-witnesses"}).out);
  EXPECT_FALSE(bare["apr"]["A"].contains("witness"));
}

TEST(CliCensus, BudgetAndField) {
  ::setenv("APRSEQ_CENSUS_BUDGET", "100", 1);
  const auto r = run({"census", "--field", "gf:2", "--n", "4"});
  ::unsetenv("APRSEQ_CENSUS_BUDGET");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "budget"));
  EXPECT_EQ(run({"census", "--field", "rational", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"census", "--field", "gf:2", "--n", "9"}).code, 2);
}

TEST(CliSchur, Complement) {
  const auto r = run({"schur", sample("schur2.txt"), "--gamma", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "labels 2"));
  EXPECT_TRUE(contains(r.out, "1/2"));
  const auto j = json::parse(run({"schur", sample("schur2.txt"), "--gamma", "1", "--json"}).out);
  EXPECT_EQ(j["matrix"][0][0], "1/2");
  EXPECT_EQ(j["rank_identity"], true);
  const auto sing = run({"schur", sample("ones3.txt"), "--gamma", "1,2"});
  EXPECT_EQ(sing.code, 2);
  EXPECT_TRUE(contains(sing.err, "det B[")) << sing.err;
  EXPECT_EQ(run({"schur", sample("schur2.txt"), "--gamma", "3"}).code, 2);
}

TEST(CliVerify, DeterministicJson) {
  const auto a = run({"verify", "--suite", "inverse", "--trials", "50", "--seed", "4", "--json"});
  const auto b = run({"verify", "--suite", "inverse", "--trials", "50", "--seed", "4", "--json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["ok"], true);
  const auto text = run({"verify", "--suite", "nn-theorem", "--trials", "20"});
  EXPECT_TRUE(contains(text.out, "PASS nn-theorem trials=20"));
  EXPECT_EQ(run({"verify", "--suite", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--n-max", "1"}).code, 2);
}

TEST(CliGeneral, UsageAndHelp) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
