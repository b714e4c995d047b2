#include <gtest/gtest.h>

#include "heckext/scenario.hpp"

using namespace heckext;

namespace {

std::string scenario_path(const std::string& name) { return std::string(HECKEXT_SCENARIO_DIR) + "/" + name; }

ScenarioError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  ADD_FAILURE() << "scenario parsed without error";
  return ScenarioError(ScenarioError::Kind::Syntax, 0, 0, "none");
}

const ReportRecord& record(const std::vector<ReportRecord>& rs, const std::string& task) {
  for (const auto& r : rs)
    if (r.task == task) return r;
  throw std::runtime_error("no record for " + task);
}

const std::string kTwoModules =
    "[datum]\n"
    "type = A1\n"
    "parameters = 1\n"
    "\n"
    "[module.St]\n"
    "kind = one_dim\n"
    "signs = -1\n"
    "\n"
    "[module.triv]\n"
    "kind = one_dim\n"
    "signs = 1\n";

std::string field(const ReportRecord& r, const std::string& key) {
  const auto* v = r.get(key);
  return v ? *v : "<missing " + key + ">";
}

}  // namespace

TEST(ScenarioParse, MinimalA1) {
  const auto sc = load_scenario_file(scenario_path("minimal_a1.scn"));
  EXPECT_EQ(sc.type, "A1");
  ASSERT_EQ(sc.modules.size(), 2u);
  ASSERT_EQ(sc.tasks.size(), 1u);
  const auto rs = run_scenario(sc);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(field(rs[0], "ext"), "0,1");
  EXPECT_TRUE(rs[0].passed);
}

TEST(ScenarioParse, UnresolvedLabelHasPosition) {
  const auto e = parse_error(kTwoModules + "\n[task.t]\nkind = ext_dims\npair = X9 St\n");
  EXPECT_EQ(e.kind(), ScenarioError::Kind::UnresolvedLabel);
  EXPECT_EQ(e.line(), 15);
  EXPECT_EQ(e.column(), 8);
  EXPECT_NE(std::string(e.what()).find("X9"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("line 15"), std::string::npos);
}

TEST(ScenarioParse, UnresolvedDualSource) {
  const auto e = parse_error(kTwoModules + "\n[module.D]\nkind = dual\nop = D\nsource = nowhere\n");
  EXPECT_EQ(e.kind(), ScenarioError::Kind::UnresolvedLabel);
  EXPECT_EQ(e.line(), 16);
}

TEST(ScenarioParse, SyntaxErrorHasPosition) {
  const auto e = parse_error("[datum]\ntype A1\n");
  EXPECT_EQ(e.kind(), ScenarioError::Kind::Syntax);
  EXPECT_EQ(e.line(), 2);
  EXPECT_GT(e.column(), 0);
}

TEST(ScenarioParse, UnknownKeyRejected) {
  const auto e = parse_error(kTwoModules + "colour = red\n");
  EXPECT_EQ(e.line(), 12);
}

TEST(ScenarioParse, CycleDetected) {
  const auto e = parse_error(kTwoModules +
                             "\n[module.a]\nkind = dual\nop = star\nsource = b\n"
                             "\n[module.b]\nkind = dual\nop = iota\nsource = a\n");
  EXPECT_EQ(e.kind(), ScenarioError::Kind::Cycle);
}

TEST(ScenarioParse, InvalidRecipe) {
  const auto e = parse_error(kTwoModules + "\n[module.bad]\nkind = one_dim\nsigns = 1 1\n");
  EXPECT_EQ(e.kind(), ScenarioError::Kind::InvalidRecipe);
}

TEST(ScenarioParse, G2FixtureParses) {
  const auto sc = load_scenario_file(scenario_path("g2_fixture.scn"));
  EXPECT_EQ(sc.type, "G2");
  EXPECT_NE(sc.recipe("St"), nullptr);
  EXPECT_NE(sc.recipe("trivial"), nullptr);
  EXPECT_NE(sc.recipe("M"), nullptr);
  std::set<std::string> kinds;
  for (const auto& t : sc.tasks) kinds.insert(t.kind);
  for (const char* k : {"ext_dims", "duality_check", "ep_check", "aubert_check", "indres_check", "classify",
                        "elliptic_count"})
    EXPECT_TRUE(kinds.count(k)) << k;
}

TEST(ScenarioRun, A1BatteryAllPassAndEpMatchesElliptic) {
  const auto rs = run_scenario(load_scenario_file(scenario_path("battery_a1.scn")));
  EXPECT_TRUE(all_passed(rs));
  std::size_t ep_records = 0;
  for (const auto& r : rs) {
    EXPECT_TRUE(r.passed) << r.to_line();
    if (r.kind == "ep_check" || r.kind == "ext_dims") {
      ++ep_records;
      EXPECT_EQ(field(r, "ep"), field(r, "elliptic")) << r.to_line();
    }
  }
  EXPECT_EQ(ep_records, 3u + 2u * 24u * 24u);  // 4 base modules and 20 composites
}

TEST(ScenarioRun, EllipticCountB2) {
  const std::string text =
      "[datum]\ntype = B2\nparameters = 1 1\n"
      "[module.triv]\nkind = one_dim\nsigns = 1 1\n"
      "[module.St]\nkind = one_dim\nsigns = -1 -1\n"
      "[module.M]\nkind = principal_series\ngamma = 3 7\n"
      "[task.e]\nkind = elliptic_count\nmodules = triv St M\nexpect = 2\n";
  const auto rs = run_scenario(parse_scenario(text));
  const auto& r = record(rs, "e");
  EXPECT_EQ(field(r, "elliptic_classes"), "2");
  EXPECT_EQ(field(r, "discrete_series_seen"), "1");
  EXPECT_TRUE(r.passed);
}

TEST(ScenarioRun, ClassifySteinbergA2) {
  const std::string text =
      "[datum]\ntype = A2\nparameters = 1\n"
      "[module.St]\nkind = one_dim\nsigns = -1 -1\n"
      "[task.c]\nkind = classify\nmodule = St\nexpect_tempered = true\nexpect_discrete_series = true\n";
  const auto rs = run_scenario(parse_scenario(text));
  const auto& r = record(rs, "c");
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(field(r, "tempered"), "true");
  EXPECT_EQ(field(r, "discrete_series"), "true");
  // St is the character on which v acts by minus half the sum of positive coroots.
  EXPECT_EQ(field(r, "central_character"), "{(-2,1) (-1,-1) (-1,2) (1,-2) (1,1) (2,-1)}");
}

TEST(ScenarioRun, FailedExpectationMarksRecord) {
  const auto rs = run_scenario(parse_scenario(kTwoModules + "[task.t]\nkind = ext_dims\npair = St St\nexpect = 0 1\n"));
  EXPECT_FALSE(all_passed(rs));
  EXPECT_NE(rs[0].to_line().find("status=fail"), std::string::npos);
}

TEST(ScenarioRun, Deterministic) {
  const auto sc = load_scenario_file(scenario_path("battery_a1.scn"));
  const std::string a = render_records(run_scenario(sc));
  const std::string b = render_records(run_scenario(load_scenario_file(scenario_path("battery_a1.scn"))));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("wall_ms"), std::string::npos);
}

TEST(ScenarioRun, DeclarationOrder) {
  const auto rs = run_scenario(parse_scenario(kTwoModules +
                                              "[task.z]\nkind = ep_check\npair = St triv\n"
                                              "[task.a]\nkind = ext_dims\npairs = all\n"));
  ASSERT_EQ(rs.size(), 5u);
  EXPECT_EQ(rs[0].task, "z");
  EXPECT_EQ(field(rs[1], "x"), "St");
  EXPECT_EQ(field(rs[1], "y"), "St");
  EXPECT_EQ(field(rs[2], "y"), "triv");
}

TEST(Records, RoundTrip) {
  ReportRecord r;
  r.task = "t1";
  r.kind = "classify";
  r.add("plain", std::string("1,0,2"));
  r.add("spaced", std::string("{(1,2) (3,4)}"));
  r.add("tricky", std::string("a=\"b\" \\c"));
  r.add("empty", std::string());
  r.check("ok", true);
  const auto fields = parse_record_line(r.to_line());
  std::map<std::string, std::string> got(fields.begin(), fields.end());
  EXPECT_EQ(got["task"], "t1");
  EXPECT_EQ(got["kind"], "classify");
  EXPECT_EQ(got["plain"], "1,0,2");
  EXPECT_EQ(got["spaced"], "{(1,2) (3,4)}");
  EXPECT_EQ(got["tricky"], "a=\"b\" \\c");
  EXPECT_EQ(got["empty"], "");
  EXPECT_EQ(got["status"], "pass");
}

TEST(Records, ScalarFieldsAreFractions) {
  for (const Scalar& x : {Scalar(0), Scalar(-3), Scalar(7, 4), Scalar(-1, 6)}) {
    const std::string s = scalar_field(x);
    EXPECT_NE(s.find('/'), std::string::npos);
    EXPECT_EQ(parse_scalar(s), x);
  }
}

TEST(Records, TableFooterCountsPasses) {
  const auto rs = run_scenario(load_scenario_file(scenario_path("minimal_a1.scn")));
  EXPECT_NE(render_table(rs).find("1/1 records passed"), std::string::npos);
}
