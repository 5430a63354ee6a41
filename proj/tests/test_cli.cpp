#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "krstrata/cli.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "krstrata");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = krs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(KRSTRATA_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << "missing golden file " << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliEnumPerm, RowCounts) {
  auto r1 = run({"enum-perm", "--flavor", "gsp", "--e", "1", "--n", "1", "--f", "1"});
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_EQ(json::parse(r1.out)["rows"].size(), 3u);

  auto r2 = run({"enum-perm", "--flavor", "gl", "--e", "1", "--n", "1", "--r", "0"});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(json::parse(r2.out)["rows"].size(), 1u);

  auto r3 = run({"enum-perm", "--flavor", "gsp", "--e", "1", "--n", "1", "--f", "2"});
  ASSERT_EQ(r3.code, 0) << r3.err;
  const auto doc = json::parse(r3.out);
  EXPECT_EQ(doc["rows"].size(), 9u);
  for (const auto& row : doc["rows"]) EXPECT_TRUE(row["oracle_agrees"].get<bool>());
}

TEST(CliEnumPerm, EnvelopeShape) {
  auto r = run({"enum-perm", "--flavor", "gsp", "--n", "1"});
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["command"], "enum-perm");
  EXPECT_EQ(doc["engine_version"], KRSTRATA_VERSION);
  EXPECT_EQ(doc["parameters"]["flavor"], "gsp");
  EXPECT_EQ(doc["rows"][0]["components"][0]["w"], json::array({1, 2}));
}

TEST(CliEnumPerm, UnitaryLengthIsNull) {
  auto r = run({"enum-perm", "--flavor", "gu", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["rows"].size(), 5u);
  EXPECT_TRUE(doc["rows"][0]["length"].is_null());
}

TEST(CliPrankTable, HilbertBlumenthalGenusTwo) {
  auto r = run({"prank-table", "--flavor", "gsp", "--e", "1", "--n", "1", "--f", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  int ordinary = 0;
  const auto doc = json::parse(r.out);
  for (const auto& row : doc["rows"]) {
    const int p = row["prank"];
    EXPECT_TRUE(p == 0 || p == 2);
    ordinary += p == 2;
  }
  EXPECT_EQ(ordinary, 2);
}

TEST(CliPrankTable, SplitNeedsSignature) {
  EXPECT_EQ(run({"prank-table", "--flavor", "gl", "--n", "2"}).code, krs::cli::kExitUsage);
  EXPECT_EQ(run({"prank-table", "--flavor", "gl", "--n", "2", "--r", "1", "--unitary", "split"}).code, 0);
}

TEST(CliScalars, TextFormat) {
  auto d = run({"density", "--e", "3", "--f", "1", "--n", "1", "--format", "text"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.out, "dense: true\n");
  auto p = run({"prank0", "--n", "4", "--r", "2", "--format", "text"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.out, "2\n");
}

TEST(CliScalars, JsonFormat) {
  auto d = json::parse(run({"density", "--e", "1", "--f", "2", "--n", "1"}).out);
  EXPECT_FALSE(d["rows"][0]["dense"].get<bool>());
  auto p = json::parse(run({"prank0", "--n", "4", "--r", "2"}).out);
  EXPECT_EQ(p["rows"][0]["dimension"], 2);
  EXPECT_EQ(p["rows"][0]["witness"], json::array({2, 1, 4, 3}));
}

TEST(CliHb, Report) {
  auto r = run({"hb", "--g", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = json::parse(r.out)["rows"][0];
  EXPECT_EQ(row["ordinary"].size(), 2u);
  EXPECT_EQ(row["prank_histogram"]["0"], 7);
  EXPECT_EQ(row["prank_histogram"]["2"], 2);
}

TEST(CliNewton, ParsesTuples) {
  auto r = run({"newton", "--tuple", "w=[2,1];l=[1,0];w=[2,1];l=[1,0]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = json::parse(r.out)["rows"][0];
  EXPECT_EQ(row["nu"], json::parse(R"([["1/2","1/2"],["1/2","1/2"]])"));
  EXPECT_EQ(row["zero_multiplicity"], 0);
  // the twisted product τ·τ is already a translation
  EXPECT_EQ(row["period"], 1);
}

TEST(CliNewton, TupleParser) {
  using krs::cli::parse_tuple;
  EXPECT_EQ(parse_tuple(" w=[2, 1] ; l=[1,0] ").size(), 1);
  EXPECT_THROW(parse_tuple("w=[2,1]"), krs::cli::UsageError);
  EXPECT_THROW(parse_tuple("l=[1,0];w=[2,1]"), krs::cli::UsageError);
  EXPECT_THROW(parse_tuple("w=[2,2];l=[1,0]"), krs::cli::UsageError);
  EXPECT_THROW(parse_tuple("w=[2,1];l=[1,x]"), krs::cli::UsageError);
  EXPECT_THROW(parse_tuple("w=[2,1];l=[1]"), krs::cli::UsageError);
  EXPECT_THROW(parse_tuple("w=[1];l=[0];w=[2,1];l=[0,0]"), krs::cli::UsageError);
}

TEST(CliExitCodes, UsageWindowAndHypothesis) {
  EXPECT_EQ(run({}).code, krs::cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, krs::cli::kExitUsage);
  EXPECT_EQ(run({"enum-perm", "--flavor", "gx"}).code, krs::cli::kExitUsage);
  EXPECT_EQ(run({"newton", "--tuple", "w=[2,1"}).code, krs::cli::kExitUsage);
  EXPECT_EQ(run({"newton", "--tuple", "w=[2,1];l=[0,1]"}).code, krs::cli::kExitUsage);
  EXPECT_EQ(run({"enum-perm", "--flavor", "gl", "--n", "13", "--r", "1"}).code, krs::cli::kExitWindow);
  EXPECT_EQ(run({"enum-perm", "--flavor", "gsp", "--n", "2", "--e", "2", "--f", "4"}).code, krs::cli::kExitWindow);
  EXPECT_EQ(run({"hb", "--g", "9"}).code, krs::cli::kExitWindow);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliExitCodes, EnvironmentWindow) {
  ::setenv("KRSTRATA_MAX_RANK", "2", 1);
  const auto r = run({"enum-perm", "--flavor", "gsp", "--n", "2"});
  ::unsetenv("KRSTRATA_MAX_RANK");
  EXPECT_EQ(r.code, krs::cli::kExitWindow);
}

TEST(CliPoset, DotOutput) {
  auto r = run({"poset", "--flavor", "gsp", "--n", "1", "--f", "1", "--format", "dot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("digraph bruhat"), std::string::npos);
  EXPECT_NE(r.out.find("n2 -> n0;"), std::string::npos);
  EXPECT_NE(r.out.find("n2 -> n1;"), std::string::npos);
  EXPECT_EQ(r.out.find("n0 -> n1;"), std::string::npos);
  EXPECT_EQ(run({"poset", "--flavor", "gu", "--n", "2"}).code, krs::cli::kExitUsage);
}

TEST(CliGolden, ByteStableOutputs) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"enum_perm_gsp_e1_n1_f1.json", {"enum-perm", "--flavor", "gsp", "--e", "1", "--n", "1", "--f", "1"}},
      {"prank_table_gsp_e1_n1_f2.csv",
       {"prank-table", "--flavor", "gsp", "--e", "1", "--n", "1", "--f", "2", "--format", "csv"}},
      {"poset_gsp_e1_n1_f2.dot", {"poset", "--flavor", "gsp", "--e", "1", "--n", "1", "--f", "2", "--format", "dot"}},
      {"prank0_n4_r2.json", {"prank0", "--n", "4", "--r", "2"}},
      {"newton_tau.json", {"newton", "--tuple", "w=[2,1];l=[1,0]"}},
  };
  for (const auto& [file, args] : cases) {
    const auto first = run(args);
    const auto second = run(args);
    ASSERT_EQ(first.code, 0) << file << ": " << first.err;
    EXPECT_EQ(first.out, second.out) << file;
    EXPECT_EQ(first.out, read_golden(file)) << file;
  }
}
