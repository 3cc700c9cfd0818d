#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "app.hpp"
#include "problem_file.hpp"

namespace fs = std::filesystem;
using robustab::cli::run;

namespace {

const std::string kExample = std::string(ROBUSTAB_DATA_DIR) + "/degree_drop_quartic.json";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const robustab::cli::Hooks& hooks = {}) {
  args.insert(args.begin(), "robustab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("robustab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
  }
  fs::path dir_;
};

using Cli = TempDir;

}  // namespace

TEST_F(Cli, CheckExampleIsStable) {
  const auto r = cli({"check", kExample});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k1 = 10 + 46z + 40z^2 + 12z^3"), std::string::npos);
  EXPECT_NE(r.out.find("k4 = 10 + 50z + 40z^2 + 6z^3"), std::string::npos);
  EXPECT_NE(r.out.find("STABLE"), std::string::npos);
}

TEST_F(Cli, CheckAxisPolynomialIsUnstable) {
  const auto f = write("axis.json", R"({"order": 2, "intervals": [[1,1],[0,0],[1,1]]})");
  EXPECT_EQ(cli({"check", f}).code, 1);
}

TEST_F(Cli, SchemaErrorsExitTwo) {
  const auto short_list = write("short.json", R"({"order": 4, "intervals": [[1,2],[1,2],[1,2]]})");
  const auto r = cli({"check", short_list});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("intervals"), std::string::npos);

  const auto swapped = write("swapped.json", R"({"order": 1, "intervals": [[1,2],[3,1]]})");
  const auto s = cli({"check", swapped});
  EXPECT_EQ(s.code, 2);
  EXPECT_NE(s.err.find("intervals[1]"), std::string::npos);

  const auto syntax = write("syntax.json", "{\n  \"order\": 1,\n  \"intervals\": [[1,2] [3,4]]\n}");
  const auto t = cli({"check", syntax});
  EXPECT_EQ(t.code, 2);
  EXPECT_NE(t.err.find("line 3"), std::string::npos);

  EXPECT_EQ(cli({"check", write("extra.json", R"({"order": 0, "intervals": [[1,2]], "bogus": 1})")}).code, 2);
  EXPECT_EQ(cli({"check", write("zero.json", R"({"order": 1, "intervals": [[1,2],[0,0]]})")}).code, 2);
  EXPECT_EQ(cli({"check", path("missing.json")}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Cli, JsonCertificateRoundTrip) {
  const auto f = write("ex.json", TempDir::slurp(kExample));
  const auto r = cli({"--json", "--quiet", "check", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const std::string cert_path = path("ex.cert.json");
  ASSERT_TRUE(fs::exists(cert_path));
  const auto cert = nlohmann::json::parse(slurp(cert_path));
  EXPECT_EQ(cert["verdict"], "STABLE");
  EXPECT_EQ(cert["tool"], "robustab");
  EXPECT_EQ(cert["kharitonov"].size(), 4u);
  EXPECT_EQ(cert["kharitonov"][2]["coefficients"], nlohmann::json::parse("[21,50,38,6,1]"));
  EXPECT_EQ(cert["kharitonov"][3]["roots"].size(), 3u);
  EXPECT_EQ(cert["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);

  // the certificate itself is a valid problem file and reproduces the verdict
  const auto again = cli({"--json", "check", cert_path, "--cert", path("again.json")});
  EXPECT_EQ(again.code, 0);
  const auto cert2 = nlohmann::json::parse(slurp(path("again.json")));
  EXPECT_EQ(cert2["verdict"], cert["verdict"]);
  EXPECT_EQ(cert2["input_digest"], cert["input_digest"]);
}

TEST_F(Cli, KpolysJson) {
  const auto r = cli({"--json", "kpolys", kExample});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["h_minus"], nlohmann::json::parse("[10,0,-40]"));
  EXPECT_EQ(j["g_plus"], nlohmann::json::parse("[0,50,0,-6]"));
  EXPECT_EQ(j["k2"], nlohmann::json::parse("[21,46,38,12,1]"));
}

TEST_F(Cli, KpolysPointBox) {
  const auto f = write("pt.json", R"({"order": 2, "intervals": [[1,1],[2,2],[3,3]]})");
  const auto r = cli({"kpolys", f});
  ASSERT_EQ(r.code, 0);
  for (int j = 1; j <= 4; ++j) {
    EXPECT_NE(r.out.find("k" + std::to_string(j) + " = 1 + 2z + 3z^2"), std::string::npos);
  }
}

TEST_F(Cli, RectCsvAndSvg) {
  const auto csv = path("sweep.csv");
  const auto svg = path("rect.svg");
  const auto r = cli({"rect", kExample, "--omega-max", "10", "--steps", "1000", "--csv", csv, "--svg", svg});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "omega,h_minus,h_plus,g_minus,g_plus,contains_zero\r");
  std::getline(in, line);
  EXPECT_EQ(line, "0,10,21,0,0,0\r");
  int rows = 1;
  int flagged = 0;
  while (std::getline(in, line)) {
    ++rows;
    ASSERT_EQ(line.back(), '\r');
    flagged += line[line.size() - 2] == '1';
  }
  EXPECT_GE(rows, 1001);
  EXPECT_EQ(flagged, 0);
  const std::string s = slurp(svg);
  EXPECT_EQ(s.rfind("<svg", 0) == 0 || s.rfind("<?xml", 0) == 0, true);
  EXPECT_EQ(s.find("href"), std::string::npos);
  EXPECT_NE(s.find("k4"), std::string::npos);
}

TEST_F(Cli, RectFlagsAxisRoot) {
  const auto f = write("axis.json", R"({"order": 2, "intervals": [[1,1],[0,0],[1,1]], "omega_max": 2, "steps": 8})");
  const auto r = cli({"--json", "rect", f, "--csv", path("a.csv")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_FALSE(j["flagged"].empty());
  EXPECT_NEAR(j["flagged"][0].get<double>(), 1.0, 1e-8);
}

TEST_F(Cli, RectUnwritableOutput) {
  EXPECT_EQ(cli({"rect", kExample, "--csv", path("no/such/dir/x.csv")}).code, 2);
  EXPECT_EQ(cli({"rect", kExample, "--omega-max", "-1"}).code, 2);
}

TEST_F(Cli, RootsMatchPrintedValues) {
  const auto r = cli({"roots", kExample, "--svg", path("roots.svg")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-5.10, -1.32, -0.25"), std::string::npos);
  EXPECT_NE(r.out.find("-2.23-5.05i, -2.23+5.05i, -0.77-0.31i, -0.77+0.31i"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("roots.svg")));
  const auto lin = write("lin.json", R"({"order": 1, "intervals": [[1,1],[1,1]]})");
  EXPECT_NE(cli({"roots", lin}).out.find("roots: -1.00"), std::string::npos);
}

TEST_F(Cli, OracleExitCodes) {
  const auto r = cli({"oracle", kExample, "--mode", "random", "--count", "10000", "--seed", "42"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("CONSISTENT"), std::string::npos);
  const auto f = write("lin.json", R"({"order": 1, "intervals": [[-1,-1],[1,1]]})");
  EXPECT_EQ(cli({"oracle", f, "--mode", "vertices"}).code, 1);
  EXPECT_EQ(cli({"oracle", f, "--mode", "sideways"}).code, 2);
}

TEST_F(Cli, OracleSeedIsGlobalAndDeterministic) {
  const auto f = write("mixed.json", R"({"order": 3, "intervals": [[-1,2],[1,3],[1,2],[0,1]]})");
  const auto a = cli({"--json", "--seed", "5", "oracle", f, "--count", "500"});
  const auto b = cli({"--json", "oracle", f, "--count", "500", "--seed", "5"});
  const auto c = cli({"--json", "oracle", f, "--count", "500", "--threads", "3", "--seed", "5"});
  EXPECT_EQ(a.code, 1);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["plan"]["seed"], 5);
  const auto d = cli({"--json", "oracle", kExample, "--count", "10"});
  EXPECT_EQ(nlohmann::json::parse(d.out)["plan"]["seed"], 7);
}

TEST_F(Cli, OracleContradictionExitsThree) {
  robustab::cli::Hooks hooks;
  hooks.decider = [](const robustab::IntervalPolynomial& box) {
    auto v = robustab::kharitonov_test(box);
    v.verdict.status = robustab::Status::Stable;
    return v;
  };
  const auto f = write("lin.json", R"({"order": 1, "intervals": [[-1,-1],[1,1]]})");
  const auto r = cli({"oracle", f, "--mode", "vertices"}, hooks);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("CONTRADICTION"), std::string::npos);
}

TEST_F(Cli, HomotopyOutcomes) {
  const auto cross = cli({"homotopy", "--from", "10,46,40,12", "--to", "1,1,1,1"});
  EXPECT_EQ(cross.code, 1);
  EXPECT_NE(cross.out.find("CROSSING"), std::string::npos);
  EXPECT_NE(cross.out.find("residual"), std::string::npos);

  const auto same = cli({"homotopy", "--from", "[1,1]", "--to", "2,2"});
  EXPECT_EQ(same.code, 0);
  EXPECT_NE(same.out.find("STABLE_ALL"), std::string::npos);

  const auto loop = cli({"--json", "homotopy", "--family", "faedo-loop"});
  EXPECT_EQ(loop.code, 1);
  const auto j = nlohmann::json::parse(loop.out);
  EXPECT_EQ(j["outcome"], "NO_CROSSING_UNSTABLE");
  EXPECT_FALSE(j["note"].get<std::string>().empty());

  const auto file = cli({"--json", "homotopy", "--from", kExample, "--k", "1", "--to", "1,1,1,1"});
  EXPECT_EQ(nlohmann::json::parse(file.out)["outcome"], "CROSSING");

  EXPECT_EQ(cli({"homotopy", "--from", "1,x", "--to", "1,1"}).code, 2);
  EXPECT_EQ(cli({"homotopy", "--family", "nope"}).code, 2);
  EXPECT_EQ(cli({"homotopy", "--from", "1,1"}).code, 2);
}

TEST(ProblemFile, DigestIgnoresFormatting) {
  const auto a = robustab::cli::parse_problem(R"({"order": 1, "intervals": [[1,2],[3,4]]})");
  const auto b = robustab::cli::parse_problem("{\"intervals\":[[1.0,2],[3,4.0]],\n \"order\":1}");
  EXPECT_EQ(robustab::cli::input_digest(a), robustab::cli::input_digest(b));
  const auto c = robustab::cli::parse_problem(R"({"order": 1, "intervals": [[1,2],[3,5]]})");
  EXPECT_NE(robustab::cli::input_digest(a), robustab::cli::input_digest(c));
}

TEST(FormatRoot, TwoDecimals) {
  EXPECT_EQ(robustab::cli::format_root({-1.5312, -0.8123}), "-1.53-0.81i");
  EXPECT_EQ(robustab::cli::format_root({-0.28, 1e-17}), "-0.28");
  EXPECT_EQ(robustab::cli::format_root({-0.001, 0}), "0.00");
}
