#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "probconn/cli.hpp"
#include "probconn/io.hpp"
#include "support/oracle.hpp"

namespace probconn {
namespace {

namespace fs = std::filesystem;

TEST(ParseGraphFile, Examples) {
  EXPECT_EQ(parse_graph_file("n 2\ne 0 1 0.5"), build_graph(2, {{0, 1, 0.5}}));
  EXPECT_EQ(parse_graph_file("# c\nn 3\ne 0 1 0.9\ne 1 2 0.8"),
            build_graph(3, {{0, 1, 0.9}, {1, 2, 0.8}}));
  EXPECT_EQ(parse_graph_file("\n  n 1  \r\n\n"), build_graph(1, {}));
}

std::size_t ErrorLine(std::string_view text) {
  try {
    parse_graph_file(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return 0;
}

TEST(ParseGraphFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(ErrorLine("e 0 1 0.5"), 1u);
  EXPECT_EQ(ErrorLine("n 2\nn 2"), 2u);
  EXPECT_EQ(ErrorLine("# x\nn 2\ne 0 1 abc"), 3u);
  EXPECT_EQ(ErrorLine("n 2\ne 0 0 0.5"), 2u);
  EXPECT_EQ(ErrorLine("n 2\ne 0 1 1.5"), 2u);
  EXPECT_EQ(ErrorLine("n 2\ne 0 2 0.5"), 2u);
  EXPECT_EQ(ErrorLine("n 3\ne 0 1 0.5\n\ne 1 0 0.2"), 4u);
  EXPECT_EQ(ErrorLine("n 3\ne 0 1"), 2u);
  EXPECT_EQ(ErrorLine("n 3\nx 0 1"), 2u);
  EXPECT_EQ(ErrorLine("n -3"), 1u);
  EXPECT_EQ(ErrorLine("n 0"), 1u);
  EXPECT_EQ(ErrorLine("# only a comment\n"), 2u);
}

TEST(SerializeGraph, RoundTripsCanonicalForm) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const ProbGraph g = test::random_graph(rng, 1 + trial % 8, 15, 0.5);
    EXPECT_EQ(parse_graph_file(serialize_graph(g)), g);
  }
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("probconn_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "probconn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_command(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  Json Output() const { return Json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, ComputeTriangle) {
  const auto tri = Write("tri.pg", "n 3\ne 0 1 0.5\ne 0 2 0.5\ne 1 2 0.5\n");
  ASSERT_EQ(Run({"compute", "--input", tri}), exit_ok) << err_.str();
  const Json doc = Output();
  EXPECT_EQ(doc["schema_version"], schema_version);
  EXPECT_EQ(doc["engine"], "exact");
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["m"], 3);
  EXPECT_NEAR(doc["q"][0][1].get<double>(), 0.625, 1e-12);
  EXPECT_NEAR(doc["lambda_max"].get<double>(), 2.25, 1e-12);
  EXPECT_EQ(doc["psd"], true);
  EXPECT_TRUE(doc["bounds"]["violations"].empty());
  EXPECT_TRUE(doc["critical_vertices"]["vertices"].empty());
  EXPECT_EQ(doc["components"].size(), 1u);
  EXPECT_TRUE(err_.str().empty());
}

TEST_F(CliTest, OutputIsDeterministicAndFullPrecision) {
  const auto g = Write("g.pg", "n 3\ne 0 1 0.1\ne 1 2 0.7\n");
  ASSERT_EQ(Run({"compute", "--input", g}), exit_ok);
  const std::string first = out_.str();
  ASSERT_EQ(Run({"compute", "--input", g}), exit_ok);
  EXPECT_EQ(out_.str(), first);
  // 0.1 * 0.7 printed in shortest round-trip form.
  EXPECT_EQ(Output()["q"][0][2].get<double>(), exact_connectivity(parse_graph_file("n 3\ne 0 1 0.1\ne 1 2 0.7"))(0, 2));
}

TEST_F(CliTest, McRunsAreByteIdentical) {
  const auto g = Write("g.pg", "n 4\ne 0 1 0.5\ne 1 2 0.6\ne 2 3 0.7\ne 0 3 0.2\n");
  ASSERT_EQ(Run({"mc", "--input", g, "--samples", "20000", "--seed", "7"}), exit_ok) << err_.str();
  const std::string first = out_.str();
  ASSERT_EQ(Run({"mc", "--input", g, "--samples", "20000", "--seed", "7"}), exit_ok);
  EXPECT_EQ(out_.str(), first);
  const Json doc = Output();
  EXPECT_EQ(doc["engine"], "mc");
  EXPECT_EQ(doc["mc"]["samples"], 20000);
  EXPECT_EQ(doc["mc"]["seed"], 7);
  EXPECT_EQ(doc["critical_vertices"]["statistical"], true);
}

TEST_F(CliTest, WalkDocument) {
  const auto path = Write("path.pg", "n 3\ne 0 1 0.5\ne 1 2 0.4\n");
  ASSERT_EQ(Run({"walk", "--z", "2", "--input", path}), exit_ok);
  const Json doc = Output();
  EXPECT_EQ(doc["z"], 2);
  EXPECT_DOUBLE_EQ(doc["walk"][0][2].get<double>(), 0.2);
  EXPECT_FALSE(doc.contains("engine"));
}

TEST_F(CliTest, SubcommandsSelectFields) {
  const auto path = Write("path.pg", "n 3\ne 0 1 0.9\ne 1 2 0.8\n");
  ASSERT_EQ(Run({"bounds", "--input", path, "--pretty"}), exit_ok);
  EXPECT_NE(out_.str().find("\n  "), std::string::npos);
  EXPECT_TRUE(Output().contains("bounds"));
  EXPECT_FALSE(Output().contains("eigenvalues"));

  ASSERT_EQ(Run({"spectrum", "--input", path}), exit_ok);
  EXPECT_TRUE(Output().contains("eigenvalues"));
  EXPECT_FALSE(Output().contains("bounds"));

  ASSERT_EQ(Run({"critical", "--input", path}), exit_ok);
  EXPECT_EQ(Output()["critical_vertices"]["vertices"][0]["vertex"], 1);

  ASSERT_EQ(Run({"rank", "--input", path, "--include-absent"}), exit_ok);
  EXPECT_EQ(Output()["ranking"].size(), 3u);
}

TEST_F(CliTest, ExitCodes) {
  const auto bad = Write("bad.pg", "e 0 1 0.5\n");
  EXPECT_EQ(Run({"compute", "--input", bad}), exit_input_error);
  EXPECT_NE(err_.str().find("line 1"), std::string::npos);
  EXPECT_TRUE(out_.str().empty());

  EXPECT_EQ(Run({"compute", "--input", (dir_ / "missing.pg").string()}), exit_input_error);
  EXPECT_EQ(Run({"frobnicate"}), exit_input_error);
  EXPECT_EQ(Run({"compute", "--input", bad, "--bogus"}), exit_input_error);
  EXPECT_EQ(Run({}), exit_input_error);
  EXPECT_EQ(Run({"walk", "--input", bad, "--z", "0"}), exit_input_error);
  EXPECT_EQ(Run({"--help"}), exit_ok);

  std::string k5 = "n 5\n";
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5 += "e " + std::to_string(i) + " " + std::to_string(j) + " 0.5\n";
  const auto big = Write("k5.pg", k5);
  EXPECT_EQ(Run({"compute", "--input", big, "--max-edges", "9"}), exit_edge_limit);
  EXPECT_NE(err_.str().find("mc"), std::string::npos);
  EXPECT_EQ(Run({"mc", "--input", big, "--samples", "100", "--max-edges", "9"}), exit_ok);
}

}  // namespace
}  // namespace probconn
