#include "pimoduli/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pimoduli;
namespace fs = std::filesystem;

namespace {

const fs::path spec_dir = PIMODULI_SPEC_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CliResult run_file(const std::string& command, const std::string& name, CliOptions opts = {}) {
  opts.command = command;
  return run(opts, slurp(spec_dir / (name + ".json")));
}

Json parsed(const CliResult& r) { return Json::parse(r.output); }

}  // namespace

TEST(DegreeRange, Parsing) {
  EXPECT_EQ(parse_degree_range("0..4"), (std::pair<std::size_t, std::size_t>{0, 4}));
  EXPECT_EQ(parse_degree_range("3"), (std::pair<std::size_t, std::size_t>{3, 3}));
  EXPECT_THROW(parse_degree_range("4..1"), ParseError);
  EXPECT_THROW(parse_degree_range("a..b"), ParseError);
  EXPECT_THROW(parse_degree_range("-1..2"), ParseError);
  EXPECT_THROW(parse_degree_range(""), ParseError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_file("moduli", "z2_z2_n2").exit_code, 0);
  EXPECT_EQ(run_file("moduli", "invalid_malformed").exit_code, 2);
  EXPECT_EQ(run_file("moduli", "invalid_missing_module").exit_code, 2);
  EXPECT_EQ(run_file("moduli", "invalid_broken_action").exit_code, 3);
  EXPECT_EQ(run_file("cohomology", "z4_z2_q0_n3").exit_code, 3);
  EXPECT_EQ(run_file("frobnicate", "z2_z2_n2").exit_code, 2);
  CliOptions small;
  small.max_group_order = 1;
  EXPECT_EQ(run_file("moduli", "z2_z2_n2", small).exit_code, 4);
}

TEST(Cli, ErrorsAreStructured) {
  const Json e = parsed(run_file("moduli", "invalid_broken_action"));
  EXPECT_EQ(e["error"]["kind"], "validation_error");
  EXPECT_EQ(e["error"]["code"], 3);
  EXPECT_TRUE(e["error"].contains("witness"));
  const Json m = parsed(run_file("moduli", "invalid_malformed"));
  EXPECT_NE(m["error"]["message"].get<std::string>().find("line 3"), std::string::npos);
}

TEST(Cli, InlineSpecs) {
  CliOptions o;
  o.command = "moduli";
  EXPECT_EQ(run(o, R"({"case": "A", "n": 2, "group": {"cyclic": [2]}, "module": {"cyclic": [2]}, "action": "trivial"})")
                .exit_code,
            0);
  EXPECT_EQ(run(o, R"({"case": "A", "n": 1, "group": {"cyclic": [2]}, "module": {"cyclic": [2]}, "action": "trivial"})")
                .exit_code,
            3);
  EXPECT_EQ(run(o, R"({"case": "A", "n": "two"})").exit_code, 2);
  EXPECT_EQ(run(o, "[]").exit_code, 2);
}

TEST(Cli, Deterministic) {
  for (const auto& entry : fs::directory_iterator(spec_dir)) {
    if (entry.path().extension() != ".json") continue;
    const std::string name = entry.path().stem().string();
    for (const std::string command : {"moduli", "check"}) {
      const CliResult a = run_file(command, name), b = run_file(command, name);
      EXPECT_EQ(a.exit_code, b.exit_code) << name;
      EXPECT_EQ(a.output, b.output) << name;
    }
  }
}

TEST(Cli, MatchesGoldenFiles) {
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(spec_dir)) {
    const std::string name = entry.path().stem().string();
    if (entry.path().extension() != ".json" || name.rfind("invalid_", 0) == 0) continue;
    const fs::path golden = spec_dir / "golden" / (name + ".json");
    ASSERT_TRUE(fs::exists(golden)) << golden;
    const CliResult r = run_file("moduli", name);
    EXPECT_EQ(r.exit_code, 0) << name;
    EXPECT_EQ(r.output, slurp(golden)) << name;
    ++compared;
  }
  EXPECT_GE(compared, 10u);
}

TEST(Cli, ReportKeys) {
  const Json a = parsed(run_file("moduli", "z2_z2_n2"));
  EXPECT_EQ(a["case"], "A");
  EXPECT_EQ(a["pi0"], 2);
  EXPECT_EQ(a["basepoints"].size(), 2u);
  EXPECT_EQ(a["basepoints"][0]["pi1"]["order"], 2);
  EXPECT_EQ(a["higher_homotopy"][0]["group"]["description"], "Z/2");
  const Json b = parsed(run_file("moduli", "z4_z2_q0_n3"));
  EXPECT_EQ(b["case"], "B");
  EXPECT_EQ(b["aut"]["order"], 2);
  EXPECT_EQ(b["pointed"]["pi1"]["description"], "Z/2");
  EXPECT_EQ(b["basepoints"][0]["pi1"]["order"], 4);
  const Json z = parsed(run_file("moduli", "z_z_q0_n3"));
  EXPECT_TRUE(z["aut"]["order"].is_null());
  EXPECT_TRUE(z["aut"]["symbolic"].get<bool>());
}

TEST(Cli, CohomologyCommand) {
  CliOptions o;
  o.degrees = {0, 4};
  o.oracle = true;
  const CliResult r = run_file("cohomology", "z2_z2_n2", o);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const Json j = parsed(r);
  ASSERT_EQ(j["cohomology"].size(), 5u);
  for (const auto& d : j["cohomology"]) EXPECT_EQ(d["group"]["description"], "Z/2");
  EXPECT_EQ(j["oracle"]["checked"].size() + j["oracle"]["skipped"].size(), 5u);
  // default range is 0..n+1
  EXPECT_EQ(parsed(run_file("cohomology", "z3_z3_n2"))["cohomology"].size(), 4u);
}

TEST(Cli, CheckCommand) {
  for (const std::string name : {"z3_z3_n2", "z2_z3_negation_n2", "z4_z2_q0_n3", "z_z_q0_n3"}) {
    const CliResult r = run_file("check", name);
    EXPECT_EQ(r.exit_code, 0) << name << r.output;
    EXPECT_TRUE(parsed(r)["ok"].get<bool>()) << name;
  }
  const CliResult bad = run_file("check", "invalid_broken_action");
  EXPECT_EQ(bad.exit_code, 3);
  EXPECT_FALSE(parsed(bad)["ok"].get<bool>());
}
