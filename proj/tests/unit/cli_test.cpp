#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "strposet/cli.hpp"
#include "strposet/io.hpp"
#include "strposet/models.hpp"

using namespace strposet;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "strposet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("strposet_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    f0_ = temp("f0.json");
    f3_ = temp("f3.json");
    save_fragment(small_example_fragment(), f0_);
    save_fragment(cusp_fragment(), f3_);
  }
  std::string f0_, f3_;
};

}  // namespace

TEST_F(Cli, GenModels) {
  auto cusp = run({"gen", "--model", "cusp"});
  EXPECT_EQ(cusp.code, 0);
  EXPECT_EQ(fragment_from_text(cusp.out), cusp_fragment());
  auto lines = run({"gen", "--model", "affine", "-p", "2", "-d", "1"});
  EXPECT_EQ(lines.code, 0);
  EXPECT_EQ(fragment_from_text(lines.out), affine_plane_fragment(2, 1));
  auto r1 = run({"gen", "--model", "random", "--n1", "12", "--n2", "3", "--seed", "7"});
  auto r2 = run({"gen", "--model", "random", "--n1", "12", "--n2", "3", "--seed", "7"});
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, r2.out);
}

TEST_F(Cli, OutputFlag) {
  const auto path = temp("out.json");
  EXPECT_EQ(run({"gen", "--model", "example", "-o", path}).code, 0);
  EXPECT_EQ(slurp(path), fragment_to_text(small_example_fragment()));
}

TEST_F(Cli, Check) {
  auto k1 = run({"check", f0_, "--k", "1"});
  auto j = Json::parse(k1.out);
  EXPECT_TRUE(j["valid"].get<bool>());
  for (const auto& r : j["reports"]) {
    if (r["condition"] == "J2") {
      EXPECT_TRUE(r["holds"].get<bool>());
    }
  }
  auto cusp = run({"check", f3_});
  EXPECT_EQ(cusp.code, 1);
  bool p5_failed = false;
  const auto reports = Json::parse(cusp.out)["reports"];
  for (const auto& r : reports)
    if (r["condition"] == "P5" && !r["holds"].get<bool>()) p5_failed = true;
  EXPECT_TRUE(p5_failed);
}

TEST_F(Cli, InvalidFileIsInputError) {
  const auto path = temp("bad.json");
  std::ofstream(path) << R"({"version": 1, "n1": 1, "n2": 1, "incidence": [[0,0],[0,0]]})";
  auto r = run({"check", path});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("$.incidence[1]"), std::string::npos);
  EXPECT_EQ(run({"check", temp("missing.json")}).code, kExitInput);
}

TEST_F(Cli, FiberDot) {
  auto r = run({"fiber", f0_, "--B", "d,e", "--dot"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("digraph"), std::string::npos);
  EXPECT_NE(r.out.find("via a,b"), std::string::npos);
  auto j = Json::parse(run({"fiber", f0_, "--B", "d,e"}).out);
  EXPECT_EQ(j["nodes"].size(), 6u);
}

TEST_F(Cli, MuCusp) {
  auto j = Json::parse(run({"mu", f3_, "--x", "P", "--m", "m"}).out);
  EXPECT_EQ(j["mu"], 7);
  EXPECT_TRUE(j["ge4"].get<bool>());
}

TEST_F(Cli, StrLeq) {
  auto j = Json::parse(run({"str-leq", f0_, "--lhs", "a|d,e", "--rhs", "a,b|d,e"}).out);
  EXPECT_TRUE(j["leq"].get<bool>());
  EXPECT_EQ(j["witness"], "a,b");
}

TEST_F(Cli, UnknownLabelIsUsageError) {
  EXPECT_EQ(run({"str-leq", f0_, "--lhs", "z|d", "--rhs", "a|d"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
}

TEST_F(Cli, RoundTrips) {
  const auto lines = temp("a31.json");
  save_fragment(affine_plane_fragment(3, 1), lines);
  auto ok = run({"roundtrip", lines, "--trials", "2"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;

  auto small = run({"roundtrip", f0_});
  EXPECT_EQ(small.code, kExitViolation);
  EXPECT_NE(small.out.find("ambiguity"), std::string::npos);
  EXPECT_EQ(run({"roundtrip", f0_, "--strict"}).code, kExitViolation);

  auto bad = run({"roundtrip", lines, "--corrupt"});
  EXPECT_EQ(bad.code, kExitViolation);
  const auto conflicts = Json::parse(bad.out)["conflicts"];
  EXPECT_FALSE(conflicts.empty());
}

TEST_F(Cli, ReconstructFromTable) {
  const auto table = temp("table.json");
  std::ofstream(table) << R"({"table": [["a|d", "a|d"], ["b|d", "b|d"], ["c|d", "c|d"],
                                        ["a|e", "a|e"], ["b|e", "b|e"]]})";
  auto r = run({"reconstruct", "--source", f0_, "--target", f0_, "--table", table, "--method",
                "rays"});
  EXPECT_NE(r.code, kExitOk);
  EXPECT_NE(r.code, kExitInput);
}

TEST_F(Cli, Dot) {
  auto r = run({"dot", f0_});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("digraph"), std::string::npos);
}
