#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abstain/cli.hpp"
#include "abstain/document.hpp"

using namespace abstain;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "abstain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, EvalSingleVoterCsv) {
  const auto r = run({"eval", fixture("single_voter.election")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("expected_distortion"), std::string::npos);
  EXPECT_NE(r.out.find(",0.25,0.75,1.5\n"), std::string::npos);
}

TEST(Cli, EvalBetaOverride) {
  const auto r = run({"eval", fixture("single_voter.election"), "--beta", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find(",0,1,1\n"), std::string::npos);
}

TEST(Cli, SimulateRequiresSeed) {
  EXPECT_EQ(run({"simulate", fixture("split_49_51.election")}).code, kExitValidation);
  const auto a = run({"simulate", fixture("split_49_51.election"), "--seed", "5", "--samples", "2000"});
  const auto b = run({"simulate", fixture("split_49_51.election"), "--seed", "5", "--samples", "2000"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ValidationErrors) {
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"eval"}).code, kExitValidation);
  EXPECT_EQ(run({"eval", fixture("missing.election")}).code, kExitValidation);
  EXPECT_EQ(run({"eval", fixture("single_voter.election"), "--beta", "1.5"}).code, kExitValidation);
  EXPECT_EQ(run({"eval", fixture("single_voter.election"), "--format", "xml"}).code, kExitValidation);
  EXPECT_EQ(run({"worstcase"}).code, kExitValidation);
  EXPECT_EQ(run({"worstcase", "--beta", "1", "--grid", "8"}).code, kExitValidation);

  const auto bad = temp_file("abstain_bad.election", "schema = 1\nkind = line\nbeta = 1\nvoter = nope\n");
  const auto r = run({"eval", bad.string()});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST(Cli, WorstcaseCsv) {
  const auto r = run({"worstcase", "--beta", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("beta,dstar,q_b,x_b,x_d,attained\n1,1.5224", 0), 0u) << r.out;
}

TEST(Cli, CurveSamplesDomain) {
  const auto r = run({"curve", "--beta", "0", "--beta", "1", "--points", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("-1,1,0.333333333333\n"), std::string::npos);
  EXPECT_NE(r.out.find("2,0,1\n"), std::string::npos);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 9);
}

TEST(Cli, ReduceWritesCanonicalDocument) {
  const auto in = temp_file("abstain_winner.election",
                            "schema = 1\nkind = line\nbeta = 1\n"
                            "voter = -0.2\nvoter = 0.1\nvoter = 0.3 * 2\nvoter = 0.6\nvoter = 0.7\n"
                            "voter = 1.3\nvoter = 1.8\nvoter = 2.5\n");
  const auto out = std::filesystem::temp_directory_path() / "abstain_winner_out.election";
  const auto r = run({"reduce", in.string(), "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = load_election(out.string());
  EXPECT_EQ(doc.metadata.at("canonical_form"), "winner");
  EXPECT_EQ(doc.positions.size(), 9u);
}

TEST(Cli, ReduceReportsCertificateFailure) {
  const auto in = temp_file("abstain_cd.election", "schema = 1\nkind = line\nbeta = 1\nvoter = 1.2\nvoter = 0.55\n");
  const auto r = run({"reduce", in.string()});
  EXPECT_EQ(r.code, kExitCertificate);
  EXPECT_NE(r.err.find("C_to_D_map"), std::string::npos) << r.err;
}

TEST(Cli, MetricReduceRoundTrips) {
  const auto r = run({"metric-reduce", fixture("metric_sample.election")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = parse_election(r.out);
  EXPECT_EQ(doc.kind, ElectionKind::line);
  EXPECT_EQ(doc.positions.size(), 7u);
  EXPECT_EQ(run({"metric-reduce", fixture("split_49_51.election")}).code, kExitValidation);
}

TEST(Cli, SweepPoints) {
  const auto r = run({"sweep", "--points", "3", "--grid", "64"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 4);
}

TEST(Cli, VerifyFlagsFailingSuite) {
  const auto r = run({"verify", "--seed", "1", "--samples", "40"});
  EXPECT_EQ(r.code, kExitCertificate);
  EXPECT_NE(r.out.find("suite,trials,passed,failed,skipped"), std::string::npos);
  EXPECT_NE(r.err.find("C_to_D_map"), std::string::npos);
}
