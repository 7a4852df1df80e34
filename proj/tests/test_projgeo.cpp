#include <random>

#include "doctest.h"
#include "feff/projgeo/projective.hpp"
#include "feff/symcore/parser.hpp"
#include "support.hpp"

using namespace feff;

namespace {

ProjectiveStructure random_ps(std::mt19937_64& rng, int n, int deg = 1) {
  ProjectiveStructure ps = ProjectiveStructure::flat(n);
  auto vars = base_vars(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        RatFunc g(testing::random_poly(rng, vars, deg, 2));
        ps.G(a, b, c) = g;
        ps.G(a, c, b) = g;
      }
  return ps;
}

ProjectiveStructure single(int n, int a, int b, int c, const char* expr) {
  ProjectiveStructure ps = ProjectiveStructure::flat(n);
  ps.G(a, b, c) = ps.G(a, c, b) = parse_expr(expr);
  return ps;
}

bool all_zero(const std::vector<RatFunc>& v) {
  for (const auto& f : v)
    if (!f.is_zero()) return false;
  return true;
}

std::vector<RatFunc> random_fields(std::mt19937_64& rng, int n, int count) {
  std::vector<RatFunc> out;
  for (int i = 0; i < count; ++i) out.emplace_back(testing::random_poly(rng, base_vars(n), 2, 3));
  return out;
}

}  // namespace

TEST_CASE("flat structure has no curvature") {
  for (int n : {2, 3}) {
    auto ps = ProjectiveStructure::flat(n);
    auto K = proj_curvature(ps);
    CHECK(all_zero(K.R));
    CHECK(all_zero(K.P));
    CHECK(all_zero(K.C));
    CHECK(all_zero(K.A));
    AlgModel M = build_model(n);
    Kostant kos(M);
    CHECK(cartan_gauge(ps, kos).kappa.is_zero());
  }
}

TEST_CASE("curvature examples") {
  // these two look curved but are projectively flat
  CHECK(all_zero(proj_curvature(single(2, 0, 1, 1, "x1")).A));
  CHECK(all_zero(proj_curvature(single(3, 0, 1, 1, "x2")).R));
  auto ps2 = single(2, 0, 1, 1, "x1^2");
  auto K2 = proj_curvature(ps2);
  CHECK_FALSE(all_zero(K2.A));
  CHECK(all_zero(K2.C));
  CHECK(K2.cotton(1, 0, 1) == RatFunc(2));
  auto ps3 = single(3, 0, 1, 1, "x3");
  auto K3 = proj_curvature(ps3);
  CHECK_FALSE(all_zero(K3.C));
  CHECK(K3.c(2, 1, 0, 1) == RatFunc(1));
  CHECK_THROWS_AS(proj_curvature(ProjectiveStructure{1, {RatFunc()}}), DomainError);
  auto torsion = ProjectiveStructure::flat(2);
  torsion.G(0, 0, 1) = RatFunc(1);
  CHECK_THROWS_AS(torsion.validate(), DomainError);
}

TEST_CASE("curvature identities on random connections") {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    for (int t = 0; t < 2; ++t) {
      auto ps = random_ps(rng, n);
      auto K = proj_curvature(ps);
      for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = 0; c2 < n; ++c2)
          for (int a = 0; a < n; ++a)
            for (int p = 0; p < n; ++p) {
              CHECK((K.r(c1, c2, a, p) + K.r(c2, p, a, c1) + K.r(p, c1, a, c2)).is_zero());
              CHECK((K.c(c1, c2, a, p) + K.c(c2, c1, a, p)).is_zero());
            }
      for (int c2 = 0; c2 < n; ++c2)
        for (int p = 0; p < n; ++p) {
          RatFunc tr1, tr2;
          for (int a = 0; a < n; ++a) {
            tr1 += K.c(a, c2, a, p);
            tr2 += K.c(c2, p, a, a);
          }
          CHECK(tr1.is_zero());
          CHECK(tr2.is_zero());
        }
      if (n == 2) CHECK(all_zero(K.C));
      // in the trace-free gauge P is symmetric and equals Ric/(n-1)
      auto tf = trace_free_representative(ps);
      for (int c = 0; c < n; ++c) CHECK(tf.trace(c).is_zero());
      auto Kt = proj_curvature(tf);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          CHECK(Kt.p(a, b) == Kt.p(b, a));
          CHECK(Kt.p(a, b) == Kt.ricci(a, b) * RatFunc(Rational(1, n - 1)));
        }
    }
  }
}

TEST_CASE("projective changes") {
  auto ps3 = single(3, 0, 1, 1, "x3");
  CHECK(proj_change(ps3, {RatFunc(), RatFunc(), RatFunc()}).gamma == ps3.gamma);
  CHECK(proj_curvature(proj_change(ps3, {RatFunc(1), RatFunc(), RatFunc()})).C == proj_curvature(ps3).C);
  auto ps2 = single(2, 0, 1, 1, "x1^2");
  auto dx2 = proj_change(ps2, {RatFunc(), RatFunc(1)});
  CHECK(proj_curvature(dx2).A == proj_curvature(ps2).A);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2; ++t) {
    auto r3 = random_ps(rng, 3);
    CHECK(proj_curvature(proj_change(r3, random_fields(rng, 3, 3))).C == proj_curvature(r3).C);
    auto r2 = random_ps(rng, 2);
    CHECK(proj_curvature(proj_change(r2, random_fields(rng, 2, 2))).A == proj_curvature(r2).A);
  }
}

TEST_CASE("tractor connections") {
  std::mt19937_64 rng(17);
  for (int n : {2, 3}) {
    auto ps = random_ps(rng, n);
    ProjTractor t{ProjBundle::T, RatFunc(testing::random_poly(rng, base_vars(n), 2, 3)), random_fields(rng, n, n), ps.gauge()};
    ProjTractor s{ProjBundle::Tstar, RatFunc(testing::random_poly(rng, base_vars(n), 2, 3)), random_fields(rng, n, n),
                  ps.gauge()};
    auto dt = tractor_derivative(ps, t);
    auto ds = tractor_derivative(ps, s);
    RatFunc pair = tractor_pairing(s, t);
    for (int c = 0; c < n; ++c)
      CHECK(pair.derivative(ps.x(c)) == tractor_pairing(ds[c], t) + tractor_pairing(s, dt[c]));
    // ∇^T = d + ω in the Weyl gauge
    AlgModel M = build_model(n);
    Kostant kos(M);
    auto cart = cartan_gauge(ps, kos);
    for (int c = 0; c < n; ++c) {
      std::vector<RatFunc> col{t.scalar};
      col.insert(col.end(), t.vec.begin(), t.vec.end());
      auto w = cart.omega[c] * col;
      CHECK(dt[c].scalar == t.scalar.derivative(ps.x(c)) + w[0]);
      for (int a = 0; a < n; ++a) CHECK(dt[c].vec[a] == t.vec[a].derivative(ps.x(c)) + w[a + 1]);
    }
    // ∇ L0(σ) has vanishing bottom slot
    RatFunc sigma(testing::random_poly(rng, base_vars(n), 3, 4));
    auto L = splitting_Tstar(ps, sigma);
    CHECK(L.scalar == sigma);
    for (const auto& d : tractor_derivative(ps, L)) CHECK(d.scalar.is_zero());
    auto vs = random_fields(rng, n, n);
    CHECK(splitting_T(ps, vs).vec == vs);
    auto other = proj_change(ps, random_fields(rng, n, n));
    CHECK_THROWS_AS(tractor_derivative(other, t), DomainError);
  }
  auto flat = ProjectiveStructure::flat(2);
  ProjTractor e1{ProjBundle::T, RatFunc(), {RatFunc(1), RatFunc()}, flat.gauge()};
  for (const auto& d : tractor_derivative(flat, e1)) {
    CHECK(d.scalar.is_zero());
    CHECK(all_zero(d.vec));
  }
}

TEST_CASE("first BGG operators") {
  for (int n : {2, 3}) {
    auto flat = ProjectiveStructure::flat(n);
    CHECK(all_zero(bgg_Tstar(flat, RatFunc(1))));
    CHECK(bgg_kernel_dim(flat, ProjBundle::Tstar, 2) == static_cast<std::size_t>(n + 1));
    CHECK(bgg_kernel_dim(flat, ProjBundle::T, 2) == static_cast<std::size_t>(n + 1));
    std::vector<RatFunc> euler;
    for (int a = 0; a < n; ++a) euler.push_back(RatFunc::var(x_var(a + 1)));
    CHECK(all_zero(bgg_T(flat, euler)));
    // normal solutions give parallel tractors
    for (const auto& d : tractor_derivative(flat, splitting_T(flat, euler))) {
      CHECK(d.scalar.is_zero());
      CHECK(all_zero(d.vec));
    }
    for (const auto& d : tractor_derivative(flat, splitting_Tstar(flat, RatFunc::var(x_var(1)) + RatFunc(2)))) {
      CHECK(d.scalar.is_zero());
      CHECK(all_zero(d.vec));
    }
  }
  std::mt19937_64 rng(23);
  auto ps = random_ps(rng, 3);
  auto th = bgg_Tstar(ps, RatFunc(testing::random_poly(rng, base_vars(3), 2, 3)));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(th[a * 3 + b] == th[b * 3 + a]);
  auto thT = bgg_T(ps, random_fields(rng, 3, 3));
  RatFunc tr;
  for (int a = 0; a < 3; ++a) tr += thT[a * 3 + a];
  CHECK(tr.is_zero());
}

TEST_CASE("normal Cartan connection in the Weyl gauge") {
  std::mt19937_64 rng(29);
  {
    auto ps = single(2, 0, 1, 1, "x1^2");
    AlgModel M = build_model(2);
    Kostant kos(M);
    auto cart = cartan_gauge(ps, kos);
    auto K = proj_curvature(ps);
    CHECK_FALSE(cart.kappa.is_zero());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const FMatrix& k = cart.kappa.at(i, j);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c)
            if (r != 0 || c == 0) CHECK(k(r, c).is_zero());
        for (int p = 0; p < 2; ++p) CHECK(k(0, p + 1) == -K.cotton(p, i, j));
      }
    CHECK(kos.codifferential(cart.kappa).is_zero());
  }
  for (int n : {2, 3}) {
    AlgModel M = build_model(n);
    Kostant kos(M);
    std::vector<ProjectiveStructure> cases{random_ps(rng, n), random_ps(rng, n, 2)};
    if (n == 3) cases.push_back(single(3, 0, 1, 1, "x3"));
    for (const auto& ps : cases) {
      auto cart = cartan_gauge(ps, kos);
      auto K = proj_curvature(ps);
      CHECK(kos.codifferential(cart.kappa).is_zero());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const FMatrix& k = cart.kappa.at(i, j);
          CHECK(k(0, 0).is_zero());
          for (int a = 0; a < n; ++a) {
            CHECK(k(a + 1, 0).is_zero());
            CHECK(k(0, a + 1) == -K.cotton(a, i, j));
            for (int p = 0; p < n; ++p) CHECK(k(a + 1, p + 1) == K.c(i, j, a, p));
          }
        }
    }
  }
}
