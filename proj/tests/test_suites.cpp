#include "doctest.h"
#include "feff/fefferman/suites.hpp"
#include "feff/symcore/parser.hpp"

using namespace feff;

namespace {

ProjectiveStructure single(int n, const char* expr) {
  ProjectiveStructure ps = ProjectiveStructure::flat(n);
  ps.G(0, 1, 1) = parse_expr(expr);
  return ps;
}

const Claim* find(const SuiteReport& r, const std::string& id) {
  for (const auto& c : r.claims)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("all suites run clean") {
  struct Case {
    ProjectiveStructure ps;
    std::vector<std::string> suites;
  };
  std::vector<Case> cases = {
      {ProjectiveStructure::flat(2), suite_names()},
      {single(2, "x1"), suite_names()},
      {single(2, "x1^2"), suite_names()},
      {single(3, "x3"), {"projective", "highdim", "normalize", "twistor"}},
  };
  for (const auto& c : cases)
    for (const auto& id : c.suites) {
      auto rep = run_suite(id, c.ps, SuiteOptions{});
      CHECK(rep.id == id);
      CHECK_FALSE(rep.claims.empty());
      for (const auto& cl : rep.claims) {
        INFO(id, " ", cl.id, " ", cl.witness);
        CHECK(cl.status != ClaimStatus::counterexample);
      }
    }
}

TEST_CASE("claim statuses") {
  auto flat = run_suite("dim2", ProjectiveStructure::flat(2), SuiteOptions{});
  for (const char* id : {"count_aEs", "count_conformal_killing", "einstein_decomposition", "killing_decomposition"}) {
    const Claim* c = find(flat, id);
    REQUIRE(c != nullptr);
    CHECK(c->status == ClaimStatus::verified);
  }
  auto bent = run_suite("dim2", single(2, "x1^2"), SuiteOptions{});
  CHECK(find(bent, "count_aEs")->status == ClaimStatus::measured);
  CHECK(find(bent, "killing_decomposition")->status == ClaimStatus::skipped);

  auto hd = run_suite("highdim", single(3, "x3"), SuiteOptions{});
  CHECK(find(hd, "defect_nonzero")->status == ClaimStatus::measured);
  CHECK(find(hd, "defect_in_f_lambda2Fbar")->status == ClaimStatus::verified);
  auto norm = run_suite("normalize", single(3, "x3"), SuiteOptions{});
  CHECK(find(norm, "sE_parallel_normal")->status == ClaimStatus::measured);
  CHECK_FALSE(norm.failed());

  auto ein = run_suite("einstein2d", single(2, "x1"), SuiteOptions{});
  REQUIRE(ein.claims.size() == 1);
  CHECK(ein.claims[0].status == ClaimStatus::skipped);
}

TEST_CASE("suite selection errors") {
  CHECK_THROWS_AS(run_suite("nonsense", ProjectiveStructure::flat(2), SuiteOptions{}), DomainError);
  CHECK_THROWS_AS(run_suite("dim2", ProjectiveStructure::flat(3), SuiteOptions{}), DomainError);
  CHECK_THROWS_AS(run_suite("einstein2d", ProjectiveStructure::flat(3), SuiteOptions{}), DomainError);
  CHECK(suite_names().size() == 6);
}

TEST_CASE("degree cap propagates") {
  int old = degree_cap();
  set_degree_cap(1);
  CHECK_THROWS_AS(run_suite("highdim", single(3, "x3"), SuiteOptions{}), DegreeCapExceeded);
  set_degree_cap(old);
}

TEST_CASE("report failure status") {
  SuiteReport rep{"x", {{"a", ClaimStatus::verified, "", 0}, {"b", ClaimStatus::measured, "false", 0},
                        {"c", ClaimStatus::skipped, "", 0}}};
  CHECK_FALSE(rep.failed());
  rep.claims.push_back({"d", ClaimStatus::counterexample, "witness", 0});
  CHECK(rep.failed());
}
