#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdm_cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qdm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return (std::filesystem::path(QDM_SAMPLES_DIR) / name).string(); }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, CompareRunsTheFileQueries) {
  const auto r = run({"compare", sample("five_consequences.qdm")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("compare x1_or_x2 sure_x2 (pu, assignment u): Equal\n"
                       "  x1_or_x2: <1, 0.1>  on [1/x1, 1/x2]\n"
                       "  sure_x2: <1, 0.1>"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("compare x4_or_x5 sure_x4 (pu, assignment u): Equal"), std::string::npos);
  EXPECT_NE(r.out.find("compare sure_x3 x2_or_x4 (pu, assignment u): Equal"), std::string::npos);
}

TEST(Cli, FlagsOverrideTheQuery) {
  const auto r = run({"compare", sample("three_consequences.qdm"), "x1_or_x2", "sure_x2", "--criterion", "rpu",
                      "--attitude", "pessimistic"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("): Greater"), std::string::npos) << r.out;
  const auto d = run({"compare", sample("three_consequences.qdm"), "x1_or_x2", "sure_x2", "--criterion", "rpu",
                      "--attitude", "pessimistic", "--nabla-dedupe"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("): Equal"), std::string::npos) << d.out;
}

TEST(Cli, ReduceBothWays) {
  auto r = run({"reduce", sample("staged.qdm")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "reduce staged under R: [1/good, 0.1/bad]\n"
            "reduce staged under RR: [(1,(0.1,1))/good, (0.1,0.5)/bad]\n");
}

TEST(Cli, EvalRefined) {
  const auto r = run({"eval", sample("refined.qdm"), "b", "--criterion", "upess"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("eval b (upess, assignment v): "), std::string::npos) << r.out;
}

TEST(Cli, JsonIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"compare", sample("staged.qdm"), "--format", "json"},
        std::vector<std::string>{"audit", "--consequences", "2", "--levels", "3", "--criterion", "rpu", "--format",
                                 "structured"},
        std::vector<std::string>{"census", "--consequences", "3", "--levels", "3", "--format", "json"}}) {
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto j = qdm::cli::Json::parse(a.out);
    EXPECT_TRUE(j.contains("command"));
    EXPECT_EQ(a.out.find("duration_ms"), std::string::npos);
  }
}

TEST(Cli, AuditJsonCarriesSpecAndPolicy) {
  const auto r = run({"audit", "--consequences", "2", "--levels", "3", "--criterion", "pu", "--checks", "B1,c4",
                      "--format", "json", "--timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = qdm::cli::Json::parse(r.out);
  EXPECT_EQ(j["spec"]["checks"], qdm::cli::Json::array({"B1", "C4"}));
  EXPECT_EQ(j["policy"]["nabla_dedupe"], false);
  EXPECT_EQ(j["policy"]["delta_dedupe"], true);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(j["checks"][0].contains("duration_ms"));
}

TEST(Cli, AuditFailureExitsThree) {
  const auto r = run({"audit", sample("three_consequences.qdm"), "--criterion", "rpu", "--checks", "refinement",
                      "--nabla-dedupe"});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_NE(r.out.find("refinement FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("first: [1/x1, 1/x2]\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("second: [1/x2]\n"), std::string::npos) << r.out;
  EXPECT_EQ(run({"audit", sample("three_consequences.qdm"), "--criterion", "rpu", "--checks", "refinement"}).code, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval"}).code, 2);
  EXPECT_EQ(run({"compare", sample("five_consequences.qdm"), "sure_x2", "nope"}).code, 2);
  EXPECT_EQ(run({"compare", sample("five_consequences.qdm"), "--criterion", "eu"}).code, 2);
  EXPECT_EQ(run({"reduce", sample("staged.qdm"), "--under", "S"}).code, 2);
  EXPECT_EQ(run({"audit", "--checks", "Z9"}).code, 2);
  EXPECT_EQ(run({"eval", "/nonexistent/file.qdm"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ParseErrorsReportPosition) {
  const auto f = temp_file("qdm_cli_bad.qdm", "qdm 1\nscale 0 1\nconsequences a b best a worst b\nlottery l = [1/zz]\n");
  const auto r = run({"reduce", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":4:16: unknown-reference"), std::string::npos) << r.err;
}

TEST(Cli, EvaluationErrorsExitOne) {
  // rpu without an attitude
  EXPECT_EQ(run({"eval", sample("refined.qdm"), "a", "--criterion", "rpu"}).code, 1);
  // too large for the budget
  EXPECT_EQ(run({"audit", "--consequences", "5", "--levels", "11", "--checks", "C3"}).code, 1);
  // inapplicable check
  EXPECT_EQ(run({"audit", "--criterion", "pu", "--checks", "A3"}).code, 1);
}

TEST(Cli, CensusCountsTheFiveByElevenSpace) {
  const auto r = run({"census", "--consequences", "5", "--levels", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("61051 enumerated, 61051 by formula"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("classes: 21 of 21"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("most populated: <1, 1>"), std::string::npos) << r.out;
}
