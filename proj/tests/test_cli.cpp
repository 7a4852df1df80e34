#include "doctest.h"
#include "feff/cli/config.hpp"
#include "feff/symcore/parser.hpp"
#include "feff/symcore/poly.hpp"

using namespace feff;

namespace {

RunConfig parse_ok(const std::string& text) {
  std::vector<Diagnostic> diags;
  RunConfig cfg = parse_config(text, diags);
  REQUIRE(diags.empty());
  return cfg;
}

bool mentions(const std::vector<Diagnostic>& diags, const std::string& s) {
  for (const auto& d : diags)
    if (to_string(d).find(s) != std::string::npos) return true;
  return false;
}

void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("millis");
    j.erase("runtime_millis");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

}  // namespace

TEST_CASE("parse") {
  auto cfg = parse_ok("n: 3\ngamma:\n  1,2,2: x3\n  \"2 1 3\": x1*x2\nsuites: [highdim]\ndegree_cap: 12\nseed: 9\n");
  CHECK(cfg.n == 3);
  CHECK(cfg.gamma.size() == 2);
  CHECK(cfg.gamma.at({2, 1, 3}) == "x1*x2");
  CHECK(cfg.suites == std::vector<std::string>{"highdim"});
  CHECK(cfg.degree_cap == 12);
  CHECK(cfg.seed == 9u);
  CHECK(validate_config(cfg).empty());

  auto ps = build_structure(cfg);
  CHECK(ps.G(1, 0, 2) == parse_expr("x1*x2"));
  CHECK(ps.G(1, 2, 0) == parse_expr("x1*x2"));
  CHECK(ps.G(0, 1, 1) == parse_expr("x3"));

  std::vector<Diagnostic> diags;
  parse_config("n: [1, 2]\ngamma: 5\nsuites: dim2\nextra: 1\n", diags);
  CHECK(mentions(diags, "n: expected a scalar"));
  CHECK(mentions(diags, "gamma: expected a table"));
  CHECK(mentions(diags, "suites: expected a list"));
  CHECK(mentions(diags, "extra: unknown key"));
  diags.clear();
  parse_config("n: 2\ngamma: {1,2: x1}\n", diags);
  CHECK(mentions(diags, "three integers"));
  diags.clear();
  parse_config("gamma:\n  - x\n  y: [\n", diags);
  CHECK_FALSE(diags.empty());
  diags.clear();
  load_config("/nonexistent/config.yaml", diags);
  CHECK(mentions(diags, "cannot open"));
}

TEST_CASE("validate") {
  auto diags = validate_config(parse_ok("n: 3\ngamma:\n  1,2,3: x1\n  1,3,2: x2\n  2,2,2: y1 + 1\n  4,1,1: x1\n"
                                        "suites: [dim2, warp, highdim, highdim]\n"));
  CHECK(mentions(diags, "gamma.1,2,3: asymmetric in (b,c)"));
  CHECK(mentions(diags, "gamma.2,2,2: parse error at 0: unknown identifier 'y1'"));
  CHECK(mentions(diags, "gamma.4,1,1: index out of range"));
  CHECK(mentions(diags, "'dim2' requires n = 2"));
  CHECK(mentions(diags, "unknown suite 'warp'"));
  CHECK(mentions(diags, "'highdim' listed twice"));
  CHECK(diags.size() == 6);

  CHECK(mentions(validate_config(parse_ok("n: 7\n")), "n: must lie in [2, 5]"));
  CHECK(mentions(validate_config(parse_ok("n: 2\ndegree_cap: 0\n")), "degree_cap"));
  // x3 is not a coordinate when n = 2
  CHECK(mentions(validate_config(parse_ok("n: 2\ngamma:\n  1,2,2: x3\n")), "unknown identifier 'x3'"));
  CHECK(validate_config(parse_ok("n: 2\ngamma:\n  1,2,1: x2\n  1,1,2: x2\n")).empty());
}

TEST_CASE("run") {
  auto cfg = parse_ok("n: 2\ngamma:\n  1,2,2: x1^2\nsuites: [projective, dim2]\n");
  auto a = run_config(cfg, 5);
  CHECK_FALSE(a.failed);
  const auto& r = a.report;
  CHECK(r["seed"] == 5);
  CHECK(r["version"] == kVersion);
  CHECK(r["config"]["gamma"]["1,2,2"] == "x1^2");
  REQUIRE(r["suites"].size() == 2);
  CHECK(r["suites"][0]["id"] == "projective");
  for (const auto& s : r["suites"])
    for (const auto& c : s["claims"]) {
      CHECK(c.contains("id"));
      CHECK(c.contains("status"));
      CHECK(c.contains("millis"));
      CHECK(c["status"] != "counterexample");
    }

  auto b = run_config(cfg, 5);
  nlohmann::json ja = a.report, jb = b.report;
  strip_timing(ja);
  strip_timing(jb);
  CHECK(ja.dump() == jb.dump());

  auto all = run_config(parse_ok("n: 2\n"), 1);
  CHECK(all.report["suites"].size() == 6);
  auto three = run_config(parse_ok("n: 3\nsuites: [projective]\n"), 1);
  CHECK(three.report["suites"].size() == 1);

  int before = degree_cap();
  auto capped = parse_ok("n: 3\ngamma:\n  1,2,2: x3\nsuites: [highdim]\ndegree_cap: 1\n");
  CHECK_THROWS_AS(run_config(capped, 1), DegreeCapExceeded);
  CHECK(degree_cap() == before);
}
