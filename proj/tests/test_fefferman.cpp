#include <random>

#include "doctest.h"
#include "feff/fefferman/fefferman.hpp"
#include "feff/symcore/parser.hpp"
#include "support.hpp"

using namespace feff;

namespace {

ProjectiveStructure single(int n, int a, int b, int c, const char* expr) {
  ProjectiveStructure ps = ProjectiveStructure::flat(n);
  ps.G(a, b, c) = ps.G(a, c, b) = parse_expr(expr);
  return ps;
}

ProjectiveStructure random_ps(std::mt19937_64& rng, int n) {
  ProjectiveStructure ps = ProjectiveStructure::flat(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        RatFunc g(testing::random_poly(rng, base_vars(n), 1, 1));
        ps.G(a, b, c) = g;
        ps.G(a, c, b) = g;
      }
  return ps;
}

bool all_zero(const std::vector<RatFunc>& v) {
  for (const auto& f : v)
    if (!f.is_zero()) return false;
  return true;
}

bool all_zero(const std::vector<FMatrix>& v) {
  for (const auto& f : v)
    if (!f.is_zero()) return false;
  return true;
}

bool same_tractor(const ConfTractor& a, const ConfTractor& b) {
  return a.rho == b.rho && a.sigma == b.sigma && a.phi == b.phi;
}

struct Setup {
  AlgModel M;
  Kostant K;
  SpinModel sm;
  explicit Setup(int n) : M(build_model(n)), K(M), sm(M) {}
};

Setup& setup(int n) {
  static Setup s2(2), s3(3);
  return n == 2 ? s2 : s3;
}

}  // namespace

TEST_CASE("chart section") {
  Setup& S = setup(2);
  auto ch = build_chart(ProjectiveStructure::flat(2), S.M);
  std::vector<Rational> at(kMaxVars);
  at[p_var(2)] = 1;
  FMatrix p0 = ch.section.map([&](const RatFunc& f) { return RatFunc(f.evaluate(at)); });
  CHECK(p0 == FMatrix::identity(3));
  at[p_var(2)] = Rational(5, 3);
  FMatrix p1 = ch.section.map([&](const RatFunc& f) { return RatFunc(f.evaluate(at)); });
  bool diagonal = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !p1(i, j).is_zero()) diagonal = false;
  CHECK(diagonal);

  for (int n : {2, 3}) {
    auto c = build_chart(ProjectiveStructure::flat(n), setup(n).M);
    std::vector<RatFunc> en(n), xi;
    en[n - 1] = RatFunc(1);
    for (int a = 1; a <= n; ++a) xi.push_back(RatFunc::var(p_var(a)));
    CHECK(fiber_action(c.section, en) == xi);
  }

  QMatrix bad = QMatrix::identity(3);
  bad(2, 1) = 1;
  CHECK_THROWS_AS(build_chart(ProjectiveStructure::flat(2), S.M, bad), DomainError);
  QMatrix good = QMatrix::identity(3);
  good(0, 2) = 4;
  good(1, 2) = -1;
  CHECK_NOTHROW(build_chart(ProjectiveStructure::flat(2), S.M, good));
  CHECK_THROWS_AS(build_chart(ProjectiveStructure::flat(3), S.M), DomainError);
}

TEST_CASE("flat model") {
  for (int n : {2, 3}) {
    Setup& S = setup(n);
    auto ch = build_chart(ProjectiveStructure::flat(n), S.M);
    auto gc = extend_connection(ch, S.K);
    CHECK(all_zero(curvature_form(gc)));
    auto g = induced_metric(gc);
    CHECK(g.g == MetricPatch::flat(n).g);
    CHECK(all_zero(conf_curvature(g).C));
    CHECK(normality_defect(gc, S.K).vanishes);
  }
}

TEST_CASE("dimension two is normal") {
  Setup& S = setup(2);
  std::mt19937_64 rng(2024);
  std::vector<ProjectiveStructure> cases = {single(2, 0, 1, 1, "x1"), single(2, 0, 1, 1, "x1^2")};
  for (int k = 0; k < 3; ++k) cases.push_back(random_ps(rng, 2));
  for (const auto& ps : cases) {
    auto ch = build_chart(ps, S.M);
    auto gc = extend_connection(ch, S.K);
    auto Kf = curvature_form(gc);
    CHECK(vertical_insertions_vanish(gc, Kf));
    CHECK(curvature_in_g(gc, Kf));
    CHECK(preserves_splitting(gc));
    CHECK(spinor_parallel(gc, S.sm, S.sm.s_E));
    CHECK(spinor_parallel(gc, S.sm, S.sm.s_F));
    auto df = normality_defect(gc, S.K);
    CHECK(df.vanishes);
    CHECK(df.homogeneity == 0);
    auto g = induced_metric(gc);
    Inertia in = inertia(g.g.map([&](const RatFunc& f) { return f.evaluate(g.point()); }));
    CHECK(in.pos == 2);
    CHECK(in.neg == 2);
  }
}

TEST_CASE("dimension two examples") {
  Setup& S = setup(2);
  auto ch = build_chart(single(2, 0, 1, 1, "x1^2"), S.M);
  auto gc = extend_connection(ch, S.K);
  auto g = induced_metric(gc);
  auto Kc = conf_curvature(g);
  CHECK_FALSE(all_zero(Kc.C));

  auto k = k_field(gc);
  CHECK(is_conformal_killing(g, k));
  const int m = g.m();
  bool c_kills = true, y_kills = true;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      RatFunc yk;
      for (int c = 0; c < m; ++c) {
        yk += Kc.cotton(a, b, c) * k[c];
        RatFunc ck;
        for (int d = 0; d < m; ++d) ck += Kc.weyl(a, b, c, d) * k[d];
        if (!ck.is_zero()) c_kills = false;
      }
      if (!yk.is_zero()) y_kills = false;
    }
  CHECK(c_kills);
  CHECK(y_kills);

  QMatrix kq(S.M.m, 1);
  auto kc = S.M.quotient_coords(S.M.K);
  for (int i = 0; i < S.M.m; ++i) kq(i, 0) = kc[i];
  for (const QMatrix& dirs : {e_directions(S.M), f_directions(S.M)}) {
    QMatrix both(S.M.m, dirs.cols() + 1);
    for (int i = 0; i < S.M.m; ++i) {
      for (std::size_t j = 0; j < dirs.cols(); ++j) both(i, j) = dirs(i, j);
      both(i, dirs.cols()) = kq(i, 0);
    }
    CHECK(both.rank() == dirs.cols());
  }

  for (const QMatrix& dirs : {f_directions(S.M), e_directions(S.M)}) {
    auto tc = twistor_check(gc, g, Kc, dirs);
    CHECK_MESSAGE(tc.theta_zero, tc.witness);
    CHECK(tc.parallel);
    CHECK(tc.pure_with_kernel);
  }
  auto chi_f = pure_spinor_for(S.M, f_directions(S.M)), chi_e = pure_spinor_for(S.M, e_directions(S.M));
  // top-degree part of χ_e ∧ (v·χ_f) for some frame vector v
  ExteriorClifford cl = tangent_clifford(2);
  bool paired = false;
  for (int a = 0; a < 4; ++a) {
    auto v = lift(cl.gamma_matrix(a)) * chi_f;
    RatFunc top = chi_e[0] * v[3] + chi_e[3] * v[0] + chi_e[1] * v[2] - chi_e[2] * v[1];
    if (!top.is_zero()) paired = true;
  }
  CHECK(paired);
}

TEST_CASE("gauge and metric tractor routes agree") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    Setup& S = setup(n);
    auto ch = build_chart(single(n, 0, 1, 1, n == 2 ? "x1^2" : "x3"), S.M);
    auto gc = extend_connection(ch, S.K);
    if (n == 3) gc = normalize_step2(normalize_step1(gc, S.K), S.K);
    auto g = induced_metric(gc);
    auto Kc = conf_curvature(g);
    std::vector<RatFunc> v(S.M.D);
    for (auto& x : v) x = RatFunc(testing::random_poly(rng, chart_vars(n), 1, 2));
    auto lhs = gauge_tractor_derivative(gc, v);
    auto rhs = std_tractor_derivative(g, Kc, gauge_to_metric_slots(gc, g, v));
    for (int c = 0; c < S.M.m; ++c) CHECK(same_tractor(gauge_to_metric_slots(gc, g, lhs[c]), rhs[c]));
  }
}

TEST_CASE("dimension three defect") {
  Setup& S = setup(3);
  auto flat = extend_connection(build_chart(ProjectiveStructure::flat(3), S.M), S.K);
  CHECK(normality_defect(flat, S.K).vanishes);
  // Γ^1_22 = x2 is projectively flat; x3 is not
  auto lit = build_chart(single(3, 0, 1, 1, "x2"), S.M);
  CHECK(normality_defect(extend_connection(lit, S.K), S.K).vanishes);

  std::mt19937_64 rng(33);
  std::vector<ProjectiveStructure> cases = {single(3, 0, 1, 1, "x3"), single(3, 0, 1, 1, "x1^2"), random_ps(rng, 3)};
  for (const auto& ps : cases) {
    auto ch = build_chart(ps, S.M);
    auto gc = extend_connection(ch, S.K);
    auto Kf = curvature_form(gc);
    CHECK(vertical_insertions_vanish(gc, Kf));
    CHECK(curvature_in_g(gc, Kf));
    auto df = normality_defect(gc, S.K);
    CHECK_FALSE(df.vanishes);
    CHECK(df.in_f_lambda2fbar);
    CHECK(df.g0_in_f_lambda2f);
    CHECK(df.homogeneity == 1);
  }
}

TEST_CASE("normalization staircase") {
  std::mt19937_64 rng(34);
  for (const auto& ps : {single(3, 0, 1, 1, "x3"), random_ps(rng, 3)}) {
    Setup& S = setup(3);
    auto ch = build_chart(ps, S.M);
    auto raw = extend_connection(ch, S.K);
    CHECK_THROWS_AS(normalize_step2(raw, S.K), DomainError);
    auto s1 = normalize_step1(raw, S.K);
    CHECK(s1.stage == Stage::step1);
    CHECK_FALSE(s1.psi0.is_zero());
    bool kills = true;
    for (int i = 0; i < S.M.m; ++i) {
      const FMatrix& v = s1.psi0.at(i);
      for (int a = 0; a < S.M.N; ++a)
        for (int b = 0; b < S.M.N; ++b)
          if (!v(a, b).is_zero() || !v(a, S.M.N + b).is_zero() || !v(S.M.N + a, S.M.N + b).is_zero()) kills = false;
      std::vector<RatFunc> sf(S.sm.s_F.begin(), S.sm.s_F.end());
      if (!all_zero(S.sm.spin(v) * sf)) kills = false;
    }
    CHECK(kills);
    CHECK(spinor_parallel(s1, S.sm, S.sm.s_F));
    auto d1 = normality_defect(s1, S.K);
    CHECK(d1.g0.is_zero());
    CHECK(d1.homogeneity != 1);
    auto s2 = normalize_step2(s1, S.K);
    CHECK(s2.stage == Stage::step2);
    CHECK(normality_defect(s2, S.K).vanishes);
    CHECK(induced_metric(s2).g == induced_metric(raw).g);
    CHECK(spinor_parallel(s2, S.sm, S.sm.s_F));
    CHECK_THROWS_AS(normalize_step1(s2, S.K), DomainError);
  }
  Setup& S2 = setup(2);
  auto ch2 = build_chart(single(2, 0, 1, 1, "x1^2"), S2.M);
  auto s1 = normalize_step1(extend_connection(ch2, S2.K), S2.K);
  CHECK(s1.psi0.is_zero());
  CHECK(normalize_step2(s1, S2.K).psi1.is_zero());
}

TEST_CASE("twistor spinor in dimension three") {
  Setup& S = setup(3);
  auto ch = build_chart(single(3, 0, 1, 1, "x3"), S.M);
  auto raw = extend_connection(ch, S.K);
  auto g = induced_metric(raw);
  auto Kc = conf_curvature(g);
  auto tc = twistor_check(raw, g, Kc, f_directions(S.M));
  CHECK_MESSAGE(tc.theta_zero, tc.witness);
  CHECK(tc.parallel);
  CHECK(tc.pure_with_kernel);
  CHECK(tc.chi == SpinField{RatFunc(1), 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("invariance") {
  Setup& S = setup(2);
  auto ps = single(2, 0, 1, 1, "x1^2");
  auto base = extend_connection(build_chart(ps, S.M), S.K);
  auto g0 = induced_metric(base);
  auto C0 = conf_curvature(g0).C;

  auto changed = proj_change(ps, {parse_expr("x2"), parse_expr("x1*x2 - 3")});
  auto ch1 = build_chart(changed, S.M);
  CHECK(induced_metric(extend_connection(ch1, S.K)).g == g0.g);

  QMatrix q = QMatrix::identity(3);
  q(0, 0) = 2;
  q(2, 2) = Rational(1, 2);
  q(0, 1) = 3;
  q(1, 2) = -1;
  auto ch2 = build_chart(ps, S.M, q);
  auto tw = extend_connection(ch2, S.K);
  auto g2 = induced_metric(tw);
  CHECK_FALSE(g2.g == g0.g);
  CHECK(conf_curvature(g2).C == C0);
  CHECK(normality_defect(tw, S.K).vanishes);
}

TEST_CASE("flat counts and the Einstein correspondence") {
  Setup& S = setup(2);
  auto ps = ProjectiveStructure::flat(2);
  auto gc = extend_connection(build_chart(ps, S.M), S.K);
  auto g = induced_metric(gc);
  CHECK(einstein_kernel_dim(g, 2) == 6);
  CHECK(bgg_kernel_dim(ps, ProjBundle::Tstar, 2) == 3);
  CHECK(bgg_kernel_dim(ps, ProjBundle::T, 2) == 3);
  CHECK(projective_killing_dim(ps, 2) == 8);
  CHECK(conformal_killing_dim(g, 2) == 15);
  CHECK(is_conformal_killing(g, k_field(gc)));

  auto Kc = conf_curvature(g);
  auto nf = adapted_frame(gc, g);
  auto chi_f = pure_spinor_for(S.M, f_directions(S.M)), chi_e = pure_spinor_for(S.M, e_directions(S.M));
  for (const char* s : {"1", "x1", "x2"}) {
    CHECK(is_zero(einstein_spin_product(g, Kc, nf, parse_expr(s), chi_f)));
    CHECK_FALSE(is_zero(einstein_spin_product(g, Kc, nf, parse_expr(s), chi_e)));
  }
  for (const char* s : {"p1", "p2", "x1*p1 + x2*p2"}) {
    CHECK_FALSE(is_zero(einstein_spin_product(g, Kc, nf, parse_expr(s), chi_f)));
    CHECK(is_zero(einstein_spin_product(g, Kc, nf, parse_expr(s), chi_e)));
  }
  for (const char* s : {"1 + p1", "x2 - p2"}) {
    CHECK_FALSE(is_zero(einstein_spin_product(g, Kc, nf, parse_expr(s), chi_f)));
    CHECK_FALSE(is_zero(einstein_spin_product(g, Kc, nf, parse_expr(s), chi_e)));
  }
}
