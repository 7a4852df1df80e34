#include <random>

#include "doctest.h"
#include "feff/confgeo/conformal.hpp"
#include "support.hpp"

using namespace feff;

namespace {

// [[A, B],[B^t, 0]] with A, B - I random polynomials vanishing at the origin.
MetricPatch random_walker(std::mt19937_64& rng, int n, bool twist = false) {
  MetricPatch mp = MetricPatch::flat(n);
  auto vars = chart_vars(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Poly a = testing::random_poly(rng, vars, 2, 2);
      a -= Poly(a.evaluate(std::vector<Rational>(kMaxVars)));
      mp.g(i, j) = RatFunc(a);
      mp.g(j, i) = RatFunc(a);
    }
  if (twist) {
    RatFunc b(Poly::var(x_var(1)) * Poly(testing::random_rational(rng)));
    mp.g(0, n + 1) = b;
    mp.g(n + 1, 0) = b;
  }
  mp.validate();
  return mp;
}

RatFunc rpoly(std::mt19937_64& rng, int n, int deg = 2, int terms = 3) {
  return RatFunc(testing::random_poly(rng, chart_vars(n), deg, terms));
}

ConfTractor random_tractor(std::mt19937_64& rng, const MetricPatch& mp) {
  ConfTractor t;
  t.rho = rpoly(rng, mp.n);
  t.sigma = rpoly(rng, mp.n);
  for (int a = 0; a < mp.m(); ++a) t.phi.push_back(rpoly(rng, mp.n));
  t.gauge = mp.gauge();
  return t;
}

SpinTractor<RatFunc> random_spin_tractor(std::mt19937_64& rng, const MetricPatch& mp) {
  SpinTractor<RatFunc> s;
  s.gauge = mp.gauge();
  for (int k = 0; k < (1 << mp.n); ++k) {
    s.tau.emplace_back(rpoly(rng, mp.n, 1, 2), rpoly(rng, mp.n, 1, 2));
    s.chi.emplace_back(rpoly(rng, mp.n, 1, 2), rpoly(rng, mp.n, 1, 2));
  }
  return s;
}

bool all_zero(const std::vector<RatFunc>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool all_zero(const std::vector<QSqrt2<RatFunc>>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool same(const std::vector<QSqrt2<RatFunc>>& a, const std::vector<QSqrt2<RatFunc>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] - b[k]).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("metric patches") {
  auto flat = MetricPatch::flat(2);
  CHECK(flat.g(0, 2) == RatFunc(1));
  MetricPatch odd;
  odd.n = 2;
  odd.g = FMatrix::identity(3);
  CHECK_THROWS_AS(odd.validate(), DomainError);
  MetricPatch riem;
  riem.n = 2;
  riem.g = FMatrix::identity(4);
  CHECK_THROWS_AS(riem.validate(), DomainError);
  MetricPatch deg = flat;
  deg.g(2, 0) = deg.g(0, 2) = RatFunc(0);
  CHECK_THROWS_AS(deg.validate(), DomainError);
  MetricPatch asym = flat;
  asym.g(0, 1) = RatFunc(Poly::var(x_var(1)));
  CHECK_THROWS_AS(asym.validate(), DomainError);
  MetricPatch foreign = flat;
  foreign.g(0, 0) = RatFunc(Poly::var(u_var(1)));
  CHECK_THROWS_AS(foreign.validate(), DomainError);
  MetricPatch sing = flat;
  sing.g(0, 2) = sing.g(2, 0) = RatFunc(Poly::var(x_var(1)));
  CHECK_THROWS_AS(sing.validate(), DomainError);
  sing.base = {Rational(1), Rational(0), Rational(0), Rational(0)};
  CHECK_NOTHROW(sing.validate());

  QMatrix s(3, 3);
  s(0, 1) = s(1, 0) = 1;
  auto in = inertia(s);
  CHECK(in.pos == 1);
  CHECK(in.neg == 1);
  CHECK(in.zero == 1);
}

TEST_CASE("Levi-Civita and curvature") {
  for (int n : {2, 3}) {
    auto K = conf_curvature(MetricPatch::flat(n));
    CHECK(all_zero(K.Gam));
    CHECK(all_zero(K.R));
    CHECK(all_zero(K.C));
    CHECK(K.J.is_zero());
  }
  std::mt19937_64 rng(41);
  bool curved_weyl = false;
  for (int trial = 0; trial < 3; ++trial) {
    auto mp = random_walker(rng, 2, trial == 2);
    auto K = conf_curvature(mp);
    const int m = mp.m();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          RatFunc v = mp.g(a, b).derivative(mp.coord(c));
          for (int e = 0; e < m; ++e) v -= K.gam(e, c, a) * mp.g(e, b) + K.gam(e, c, b) * mp.g(a, e);
          CHECK(v.is_zero());
          CHECK(K.gam(a, b, c) == K.gam(a, c, b));
        }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        CHECK(K.ric(a, b) == K.ric(b, a));
        for (int d = 0; d < m; ++d) {
          RatFunc tr1;
          for (int c = 0; c < m; ++c) tr1 += K.weyl(c, b, c, d);
          CHECK(tr1.is_zero());
          RatFunc bianchi = K.r(a, b, d, 0) + K.r(b, 0, d, a) + K.r(0, a, d, b);
          CHECK(bianchi.is_zero());
        }
      }
    RatFunc J;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) J += K.ginv(a, b) * K.p(a, b);
    CHECK(J == K.J);
    for (const auto& c : K.C) curved_weyl = curved_weyl || !c.is_zero();

    Poly w = testing::random_poly(rng, {x_var(1), p_var(2)}, 2, 2);
    RatFunc omega(w - Poly(w.evaluate(std::vector<Rational>(kMaxVars))) + Poly(Rational(1)));
    auto Kh = conf_curvature(mp.rescaled(omega));
    CHECK(Kh.C == K.C);
  }
  CHECK(curved_weyl);
}

TEST_CASE("Cotton tensor") {
  std::mt19937_64 rng(43);
  auto mp = random_walker(rng, 2, true);
  auto K = conf_curvature(mp);
  const int m = mp.m();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        CHECK(K.cotton(a, b, c) == -K.cotton(b, a, c));
        CHECK((K.cotton(a, b, c) + K.cotton(b, c, a) + K.cotton(c, a, b)).is_zero());
      }
  CHECK_FALSE(all_zero(K.Y));
  auto Kr = conf_curvature(MetricPatch::flat(2).rescaled(RatFunc(Poly::var(x_var(1)) * Poly::var(p_var(2)) + Poly(Rational(1)))));
  CHECK(all_zero(Kr.Y));
}

TEST_CASE("standard tractor connection") {
  std::mt19937_64 rng(47);
  auto flat = MetricPatch::flat(2);
  auto Kf = conf_curvature(flat);
  ConfTractor top{RatFunc(0), std::vector<RatFunc>(4), RatFunc(1), flat.gauge()};
  for (const auto& d : std_tractor_derivative(flat, Kf, top)) {
    CHECK(d.rho.is_zero());
    CHECK(all_zero(d.phi));
    CHECK(d.sigma.is_zero());
  }
  for (int trial = 0; trial < 2; ++trial) {
    auto mp = random_walker(rng, 2, trial == 1);
    auto K = conf_curvature(mp);
    auto t = random_tractor(rng, mp), s = random_tractor(rng, mp);
    auto dt = std_tractor_derivative(mp, K, t), ds = std_tractor_derivative(mp, K, s);
    RatFunc h = std_tractor_metric(K, t, s);
    for (int c = 0; c < mp.m(); ++c) {
      RatFunc rhs = std_tractor_metric(K, dt[c], s) + std_tractor_metric(K, t, ds[c]);
      CHECK(h.derivative(mp.coord(c)) == rhs);
    }
    auto L = einstein_bgg(mp, K, rpoly(rng, 2, 3, 4)).split;
    for (const auto& d : std_tractor_derivative(mp, K, L)) CHECK(d.sigma.is_zero());
    t.gauge = flat.gauge();
    CHECK_THROWS_AS(std_tractor_derivative(mp, K, t), DomainError);
  }
}

TEST_CASE("almost Einstein scales") {
  auto flat = MetricPatch::flat(2);
  auto K = conf_curvature(flat);
  CHECK(all_zero(einstein_bgg(flat, K, RatFunc(1)).theta));
  CHECK(all_zero(einstein_bgg(flat, K, RatFunc(Poly::var(x_var(1)))).theta));
  CHECK_FALSE(all_zero(einstein_bgg(flat, K, RatFunc(Poly::var(x_var(1)).pow(2))).theta));
  CHECK(einstein_kernel_dim(flat, 2) == 6);
  CHECK(einstein_kernel_dim(MetricPatch::flat(3), 2) == 8);

  // σ = 1 + x1 - 3 p2 + x1 p1 + x2 p2 solves the flat equation; Ωσ solves it for Ω^2 g
  RatFunc x1(Poly::var(x_var(1))), x2(Poly::var(x_var(2))), p1(Poly::var(p_var(1))), p2(Poly::var(p_var(2)));
  RatFunc sigma = RatFunc(1) + x1 - RatFunc(3) * p2 + x1 * p1 + x2 * p2;
  REQUIRE(all_zero(einstein_bgg(flat, K, sigma).theta));
  for (const auto& d : std_tractor_derivative(flat, K, einstein_bgg(flat, K, sigma).split)) {
    CHECK(d.rho.is_zero());
    CHECK(all_zero(d.phi));
  }
  RatFunc omega = RatFunc(1) + x2 * x2 + p1;
  auto hat = flat.rescaled(omega);
  auto Kh = conf_curvature(hat);
  CHECK_FALSE(all_zero(Kh.P));
  auto eb = einstein_bgg(hat, Kh, omega * sigma);
  CHECK(all_zero(eb.theta));
  CHECK_FALSE(all_zero(einstein_bgg(hat, Kh, sigma).theta));
  for (const auto& d : std_tractor_derivative(hat, Kh, eb.split)) {
    CHECK(d.rho.is_zero());
    CHECK(all_zero(d.phi));
    CHECK(d.sigma.is_zero());
  }
}

TEST_CASE("null frames") {
  std::mt19937_64 rng(53);
  auto mp = random_walker(rng, 2, true);
  auto nf = NullFrame::vertical(mp);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(nf.F(2 + i, 2 + j) == RatFunc(i == j ? 1 : 0));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      FMatrix ac = nf.gamma(a) * nf.gamma(b) + nf.gamma(b) * nf.gamma(a);
      CHECK(ac == FMatrix::identity(4) * (mp.g(a, b) * RatFunc(-2)));
    }
  CHECK_THROWS_AS(NullFrame::from_matrix(mp, FMatrix::identity(4)), DomainError);
  MetricPatch bad = MetricPatch::flat(2);
  bad.g(2, 2) = RatFunc(Poly::var(x_var(1)));
  CHECK_THROWS_AS(NullFrame::vertical(bad), DomainError);
}

TEST_CASE("spin tractor connection") {
  std::mt19937_64 rng(59);
  auto flat = MetricPatch::flat(2);
  auto Kf = conf_curvature(flat);
  auto nff = NullFrame::vertical(flat);
  SpinTractor<RatFunc> c;
  c.gauge = flat.gauge();
  c.tau.assign(4, QSqrt2<RatFunc>(0));
  c.chi.assign(4, QSqrt2<RatFunc>(0));
  c.chi[1] = QSqrt2<RatFunc>(RatFunc(3));
  for (const auto& d : spin_tractor_derivative(flat, Kf, nff, c)) {
    CHECK(all_zero(d.tau));
    CHECK(all_zero(d.chi));
  }

  auto tangent = tangent_clifford(2);
  for (int trial = 0; trial < 2; ++trial) {
    auto mp = random_walker(rng, 2, trial == 1);
    auto K = conf_curvature(mp);
    auto nf = NullFrame::vertical(mp);
    auto T = random_tractor(rng, mp);
    auto S = random_spin_tractor(rng, mp);
    auto TS = tractor_clifford(tangent, to_frame(K, nf, T), S);
    auto dTS = spin_tractor_derivative(mp, K, nf, TS);
    auto dT = std_tractor_derivative(mp, K, T);
    auto dS = spin_tractor_derivative(mp, K, nf, S);
    for (int a = 0; a < mp.m(); ++a) {
      auto x = tractor_clifford(tangent, to_frame(K, nf, dT[a]), S);
      auto y = tractor_clifford(tangent, to_frame(K, nf, T), dS[a]);
      for (std::size_t k = 0; k < x.tau.size(); ++k) {
        x.tau[k] += y.tau[k];
        x.chi[k] += y.chi[k];
      }
      CHECK(same(dTS[a].tau, x.tau));
      CHECK(same(dTS[a].chi, x.chi));
    }
    S.gauge = flat.gauge();
    CHECK_THROWS_AS(spin_tractor_derivative(mp, K, nf, S), DomainError);
  }
}

TEST_CASE("twistor operator") {
  std::mt19937_64 rng(61);
  auto flat = MetricPatch::flat(2);
  auto Kf = conf_curvature(flat);
  auto nff = NullFrame::vertical(flat);
  SpinField constant{RatFunc(2), RatFunc(0), RatFunc(0), RatFunc(-1)};
  for (const auto& t : twistor_operator(flat, Kf, nff, constant).theta) CHECK(all_zero(t));
  CHECK(twistor_kernel_dim(flat, nff, 1) == 8);
  SpinField mixed{RatFunc(1), RatFunc(1), RatFunc(0), RatFunc(0)};
  CHECK_THROWS_AS(twistor_operator(flat, Kf, nff, mixed), DomainError);

  for (int trial = 0; trial < 2; ++trial) {
    auto mp = random_walker(rng, 2, trial == 1);
    auto K = conf_curvature(mp);
    auto nf = NullFrame::vertical(mp);
    SpinField chi{rpoly(rng, 2), RatFunc(0), RatFunc(0), rpoly(rng, 2)};
    if (trial == 1) chi = {RatFunc(0), rpoly(rng, 2), rpoly(rng, 2), RatFunc(0)};
    auto r = twistor_operator(mp, K, nf, chi);
    SpinField trace(4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        auto v = nf.gamma(a) * r.theta[b];
        for (int k = 0; k < 4; ++k) trace[k] += K.ginv(a, b) * v[k];
      }
    CHECK(all_zero(trace));
    auto d = spin_tractor_derivative(mp, K, nf, r.split);
    for (int a = 0; a < 4; ++a) {
      std::vector<QSqrt2<RatFunc>> th(r.theta[a].begin(), r.theta[a].end());
      CHECK(same(d[a].chi, th));
    }
  }

  // χ = γ(x) ψ on the flat model, and its conformal transform fχ for the metric f^4 g
  RatFunc x1(Poly::var(x_var(1))), p2(Poly::var(p_var(2)));
  SpinField psi{RatFunc(0), RatFunc(1), RatFunc(-2), RatFunc(0)};
  SpinField chi{RatFunc(1), RatFunc(0), RatFunc(0), RatFunc(5)};
  for (int a = 0; a < 4; ++a) {
    RatFunc xa(Poly::var(flat.coord(a)));
    auto v = nff.gamma(a) * psi;
    for (int k = 0; k < 4; ++k) chi[k] += xa * v[k];
  }
  {
    auto r = twistor_operator(flat, Kf, nff, chi);
    for (const auto& t : r.theta) CHECK(all_zero(t));
    for (const auto& d : spin_tractor_derivative(flat, Kf, nff, r.split)) {
      CHECK(all_zero(d.tau));
      CHECK(all_zero(d.chi));
    }
  }
  RatFunc f = RatFunc(1) + x1 * p2;
  auto hat = flat.rescaled(f * f);
  auto Kh = conf_curvature(hat);
  auto nfh = NullFrame::from_matrix(hat, nff.F * (RatFunc(1) / (f * f)));
  SpinField chih = chi;
  for (auto& x : chih) x *= f;
  auto r = twistor_operator(hat, Kh, nfh, chih);
  for (const auto& t : r.theta) CHECK(all_zero(t));
  for (const auto& d : spin_tractor_derivative(hat, Kh, nfh, r.split)) {
    CHECK(all_zero(d.tau));
    CHECK(all_zero(d.chi));
  }
  bool unscaled_twistor = true;
  for (const auto& t : twistor_operator(hat, Kh, nfh, chi).theta) unscaled_twistor = unscaled_twistor && all_zero(t);
  CHECK_FALSE(unscaled_twistor);
}
