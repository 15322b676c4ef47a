#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "edp/cli.hpp"

using namespace edp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "edp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(EDP_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("edp_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string error_code(const Result& r) { return json::parse(r.err)["error"].get<std::string>(); }

}  // namespace

TEST(Parse, RejectsUnknownKey) {
  auto f = temp_file("unknown.json", R"({"p":2,"torus_rank":1,"root_of_unity_exponent":1,"weights":[[1]],"generators":[],"extra":1})");
  auto r = run_cli({"validate", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "INVALID_INPUT");
}

TEST(Parse, RejectsBadPermutation) {
  auto f = temp_file("badperm.json",
                     R"({"p":2,"torus_rank":1,"root_of_unity_exponent":2,"weights":[[1],[-1]],
                        "generators":[{"perm":[1,1],"coeff_num":[0,0],"coeff_den":[1,1]}]})");
  auto r = run_cli({"validate", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "INVALID_INPUT");
}

TEST(Parse, RejectsMalformedJsonAndMissingFile) {
  EXPECT_EQ(run_cli({"validate", temp_file("broken.json", "{")}).code, 1);
  EXPECT_EQ(run_cli({"validate", "/nonexistent/input.json"}).code, 1);
  EXPECT_EQ(run_cli({"validate", "case", "sl", "x", "2"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST(Parse, NoInducedActionIsInvalidInput) {
  auto f = temp_file("noaction.json",
                     R"({"p":2,"torus_rank":1,"root_of_unity_exponent":1,"weights":[[1],[2]],
                        "generators":[{"perm":[2,1],"coeff_num":[0,0],"coeff_den":[1,1]}]})");
  auto r = run_cli({"validate", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "NO_INDUCED_ACTION");
}

TEST(Parse, LargeIntegersAsStrings) {
  auto f = temp_file("big.json", R"({"p":3,"torus_rank":1,"root_of_unity_exponent":1,
                                     "weights":[["36893488147419103232"]],"generators":[]})");
  auto r = run_cli({"stabilizer", f, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  // 2^65 does not fit in 64 bits and comes back as a digit string.
  EXPECT_EQ(r.j()["torus_part"]["invariant_factors"][0], "36893488147419103232");
}

TEST(RoundTrip, PresentationsAreByteIdentical) {
  for (const auto& path : {sample("sl2_normalizer.json"), sample("sl3_cycle_with_character.json"), sample("weight_two_line.json")}) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto in = parse_input(ss.str());
    const std::string once = to_json(in.presentation, in.extra_blocks).dump();
    auto again = parse_input(once);
    EXPECT_EQ(to_json(again.presentation, again.extra_blocks).dump(), once) << path;
  }
  for (const auto& P : {sln_case(6, 2).presentation, sln_case(9, 3).presentation, so_case(2)}) {
    const std::string once = to_json(P).dump();
    EXPECT_EQ(to_json(parse_input(once).presentation).dump(), once);
  }
}

TEST(RoundTrip, EmittedCaseGivesSameReports) {
  auto c = run_cli({"case", "sl", "6", "2", "--format", "json"});
  ASSERT_EQ(c.code, 0);
  auto f = temp_file("sl62.json", c.j()["presentation"].dump());
  for (const std::string cmd : {"validate", "stabilizer"}) {
    auto from_file = run_cli({cmd, f, "--format", "json"});
    auto from_case = run_cli({cmd, "case", "sl", "6", "2", "--format", "json"});
    EXPECT_EQ(from_file.code, 0);
    EXPECT_EQ(from_file.out, from_case.out) << cmd;
  }
  auto e1 = run_cli({"ed", f, "--format", "json"});
  auto e2 = run_cli({"ed", f, "--format", "json"});
  EXPECT_EQ(e1.out, e2.out);
}

TEST(Commands, ValidateSample) {
  auto r = run_cli({"validate", sample("sl2_normalizer.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["component_order"], 2);
  EXPECT_EQ(r.j()["induced_matrices"][0], json::parse("[[-1]]"));
  EXPECT_EQ(r.j()["split_witness"], false);
}

TEST(Commands, SplitClaimMismatchIsDiagnosticOnly) {
  auto f = temp_file("claim.json", R"({"p":2,"torus_rank":1,"root_of_unity_exponent":2,"weights":[[1],[-1]],
                                       "generators":[{"perm":[2,1],"coeff_num":[0,1],"coeff_den":[1,2]}],"split":true})");
  auto r = run_cli({"validate", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("split claim rejected"), std::string::npos);
}

TEST(Commands, SymRankOfNegation) {
  auto r = run_cli({"symrank", sample("sl2_normalizer.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["value"], 2);
  EXPECT_EQ(r.j()["status"], "EXACT");
}

TEST(Commands, StabilizerWithExtraBlock) {
  auto def = run_cli({"stabilizer", sample("sl3_cycle_with_character.json"), "--format", "json"});
  ASSERT_EQ(def.code, 0) << def.err;
  EXPECT_EQ(def.j()["pi_S"]["order"], 3);
  auto all = run_cli({"stabilizer", sample("sl3_cycle_with_character.json"), "--rep", "all", "--format", "json"});
  EXPECT_EQ(all.j()["pi_S"]["order"], 1);
  EXPECT_EQ(all.j()["p_generically_free"], true);
  EXPECT_EQ(run_cli({"stabilizer", sample("sl2_normalizer.json"), "--rep", "extra"}).code, 1);
}

TEST(Commands, EtaWithoutRepresentationIsInconclusive) {
  auto r = run_cli({"eta", sample("sl2_normalizer.json"), "--rep", "none", "--format", "json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.j()["lower"], 2);
  EXPECT_TRUE(r.j()["upper"].is_null());
  auto v = run_cli({"eta", sample("sl2_normalizer.json"), "--format", "json"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.j()["exact"], 2);
}

TEST(Commands, EtaRejectsNonFaithful) {
  auto r = run_cli({"eta", sample("weight_two_line.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "V_NOT_P_FAITHFUL");
}

TEST(Commands, EdCase) {
  auto r = run_cli({"ed", "case", "sl", "3", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["ed"]["exact"], 2);
  EXPECT_EQ(r.j()["label"], "a");
  auto t = run_cli({"ed", "case", "sl", "3", "3"});
  EXPECT_NE(t.out.find("ed.exact: 2\n"), std::string::npos);
}

TEST(Commands, EdNonSplitIsInconclusive) {
  auto r = run_cli({"ed", sample("sl2_normalizer.json"), "--format", "json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.j()["exact"].is_null());
  EXPECT_EQ(r.j()["ed_upper"], 1);
}

TEST(Commands, TableMatchesClosedForms) {
  auto r = run_cli({"table", "sl", "6", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n\tcase\tclosed\ted_lower\ted_upper\texact\tmatch");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.size() - 3), "yes") << line;
  }
  EXPECT_EQ(rows, 5u);
  auto j = run_cli({"table", "sl", "6", "3", "--format", "json"}).j();
  for (const auto& row : j) EXPECT_EQ(row["ed"]["exact"], row["closed_form"]);
}

TEST(Commands, SoTableReportsComputedValue) {
  auto r = run_cli({"table", "so", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()[0]["ed"]["exact"], 3);
  EXPECT_EQ(r.j()[0]["closed_form"], 4);
  EXPECT_EQ(r.j()[0]["matches_closed_form"], false);
}

TEST(Commands, Oracles) {
  auto s = run_cli({"oracle", "sylow", "4", "2", "--format", "json"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.j()["max_abelian_order"], 4);
  EXPECT_EQ(s.j()["pass"], true);
  auto st = run_cli({"oracle", "stab", "case", "sl", "3", "3", "--seed", "2", "--format", "json"});
  ASSERT_EQ(st.code, 0) << st.err;
  EXPECT_EQ(st.j()["min_order"], 3);
  EXPECT_EQ(st.j()["agrees"], true);
  auto sr = run_cli({"oracle", "symrank", sample("sl2_normalizer.json"), "--format", "json"});
  ASSERT_EQ(sr.code, 0) << sr.err;
  EXPECT_EQ(sr.j()["value"], 2);
  EXPECT_EQ(run_cli({"oracle", "stab", "case", "sl", "3", "3", "--q", "8"}).code, 1);
  EXPECT_EQ(run_cli({"oracle", "unknown", "case", "sl", "3", "3"}).code, 1);
}

TEST(ExitCodes, BudgetAndLimits) {
  auto s = run_cli({"oracle", "sylow", "10", "2"});
  EXPECT_EQ(s.code, 3);
  EXPECT_EQ(error_code(s), "BUDGET_EXCEEDED");
  auto v = run_cli({"validate", "case", "sl", "8", "2", "--max-elements", "5"});
  EXPECT_EQ(v.code, 3);
  EXPECT_EQ(error_code(v), "LIMIT_EXCEEDED");
  auto st = run_cli({"oracle", "stab", "case", "sl", "9", "3"});
  EXPECT_EQ(st.code, 3);
}

TEST(ExitCodes, UnsupportedCase) {
  auto r = run_cli({"case", "sl", "4", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "UNSUPPORTED");
}
