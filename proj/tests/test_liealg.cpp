#include <random>

#include "doctest.h"
#include "feff/errors.hpp"
#include "feff/liealg/model.hpp"
#include "support.hpp"

using namespace feff;

TEST_CASE("dimensions") {
  AlgModel m2 = build_model(2);
  CHECK(span_dim(m2.g_basis) == 8);
  CHECK(span_dim(m2.gt_basis) == 15);
  CHECK(span_dim(m2.gt_plus) == 4);
  CHECK(span_dim(m2.q_basis) == 4);
  CHECK(span_dim(m2.p_basis) == 6);
  CHECK(span_dim(m2.p_prime_basis) == 5);
  CHECK(span_dim(m2.p_tilde_basis) == 11);
  AlgModel m3 = build_model(3);
  CHECK(span_dim(m3.g_basis) == 15);
  CHECK(span_dim(m3.gt_basis) == 28);
  CHECK(m3.m == 6);
  CHECK(span_dim(m3.q_basis) == 15 - 6);
  CHECK_THROWS_AS(build_model(1), DomainError);
}

TEST_CASE("bilinear form and null vector") {
  for (int n : {2, 3, 4}) {
    AlgModel M = build_model(n);
    for (int i = 0; i < M.D; ++i)
      for (int j = 0; j < M.D; ++j) {
        bool off = (j == i + M.N) || (i == j + M.N);
        CHECK(M.h(i, j) == (off ? 1 : 0));
      }
    QVector hv = M.h * M.v_plus_tilde;
    Rational s = 0;
    for (int i = 0; i < M.D; ++i) s += hv[i] * M.v_plus_tilde[i];
    CHECK(s == 0);
    CHECK(M.v_plus_tilde.front() == 1);
    CHECK(M.v_plus_tilde.back() == 1);
    for (const auto& B : M.gt_basis) CHECK(M.is_skew(B));
    for (const auto& B : M.p_tilde_basis) CHECK(M.is_skew(B));
  }
}

TEST_CASE("inclusion of sl(n+1)") {
  AlgModel M = build_model(2);
  CHECK(include_sl(QMatrix(3, 3)).is_zero());
  QMatrix E = QMatrix::unit(3, 3, 0, 1);
  QMatrix expect(6, 6);
  expect(0, 1) = 1;
  expect(4, 3) = -1;
  CHECK(include_sl(E) == expect);
  CHECK_THROWS_AS(include_sl(QMatrix::identity(3)), DomainError);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    QMatrix A = testing::random_combo(rng, M.g_basis), B = testing::random_combo(rng, M.g_basis);
    CHECK(M.is_skew(include_sl(A)));
    CHECK(include_sl(bracket(A, B)) == bracket(include_sl(A), include_sl(B)));
  }
}

TEST_CASE("Killing forms") {
  AlgModel M = build_model(2);
  CHECK(M.c == Rational(4, 3));
  CHECK(M.killing_sl == 6);
  CHECK(M.killing_so == 4);
  for (const auto& a : M.g_basis)
    for (const auto& b : M.g_basis) {
      CHECK(M.killing(include_sl(a), include_sl(b), Algebra::so) == M.c * M.killing(a, b, Algebra::sl));
    }
  std::mt19937_64 rng(4);
  for (int t = 0; t < 3; ++t) {
    QMatrix X = testing::random_combo(rng, M.gt_basis), Y = testing::random_combo(rng, M.gt_basis);
    CHECK(M.killing(X, Y, Algebra::so) == M.killing_from_ad(X, Y, Algebra::so));
    QMatrix a = testing::random_combo(rng, M.g_basis), b = testing::random_combo(rng, M.g_basis);
    CHECK(M.killing(a, b, Algebra::sl) == M.killing_from_ad(a, b, Algebra::sl));
  }
  for (const auto& Z : M.gt_plus) CHECK(M.killing(Z, Z, Algebra::so) == 0);
  AlgModel M3 = build_model(3);
  CHECK(M3.c == Rational(3, 2));
  CHECK_THROWS_AS(M.killing(M.g_basis[0], M.gt_basis[0], Algebra::so), DomainError);
}

TEST_CASE("dual bases") {
  for (int n : {2, 3}) {
    AlgModel M = build_model(n);
    for (int i = 0; i < M.m; ++i)
      for (int j = 0; j < M.m; ++j) {
        Rational d = i == j ? 1 : 0;
        CHECK(M.killing(M.X_incl[i], M.Z_tilde[j], Algebra::so) == d);
        if (i < n && j < n) CHECK(M.killing(M.X_incl[i], M.Z_incl[j], Algebra::so) == d);
      }
    for (int j = 0; j < n; ++j) {
      CHECK(M.member(M.Z[j], Sub::p_plus));
      CHECK(M.member(M.Z_tilde[j], Sub::p_tilde_plus));
      CHECK(M.member(M.Z_tilde[j] - M.Z_incl[j], Sub::g_perp));
    }
    // Z~_j kills F̄ and the null line
    std::vector<QVector> fbar_l = {M.v_plus_tilde};
    for (int i = 1; i <= n; ++i) {
      QVector f(M.D, Rational(0));
      f[M.N + i] = 1;
      fbar_l.push_back(f);
    }
    for (int j = 0; j < n; ++j)
      for (const auto& v : fbar_l) {
        QVector w = M.Z_tilde[j] * v;
        for (const auto& x : w) CHECK(x == 0);
      }
  }
}

TEST_CASE("quotient g/q is isomorphic to g~/p~") {
  for (int n : {2, 3}) {
    AlgModel M = build_model(n);
    std::vector<QMatrix> span = M.q_basis;
    span.insert(span.end(), M.X.begin(), M.X.end());
    CHECK(span_dim(span) == span_dim(M.g_basis));
    QMatrix coords(M.m, M.m);
    for (int k = 0; k < M.m; ++k) {
      QVector c = M.quotient_coords(M.X_incl[k]);
      for (int i = 0; i < M.m; ++i) coords(i, k) = c[i];
      CHECK(M.graded_part(M.X_hat[k], -1) == M.X_hat[k]);
      CHECK(M.member(M.X_incl[k] - M.X_hat[k], Sub::p_tilde));
    }
    CHECK(coords == QMatrix::identity(M.m));
    // q = g ∩ p~
    for (const auto& B : M.g_basis) {
      bool in_q = in_span(M.q_basis, B);
      CHECK(in_q == M.member(include_sl(B), Sub::p_tilde));
    }
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
      QMatrix A = testing::random_combo(rng, M.g_basis);
      CHECK(M.member(A, Sub::q) == M.member(include_sl(A), Sub::p_tilde));
      QMatrix Q = testing::random_combo(rng, M.q_basis);
      CHECK(M.member(include_sl(Q), Sub::p_tilde));
      CHECK(M.member(Q, Sub::q));
    }
  }
}

TEST_CASE("membership block shapes") {
  AlgModel M = build_model(3);
  QMatrix upper(4, 4);
  upper(0, 1) = 2;
  upper(0, 3) = 1;
  upper(1, 2) = 5;
  upper(2, 3) = -1;
  CHECK(M.member(upper, Sub::q));
  QMatrix pp = upper;
  pp(0, 0) = 1;
  pp(3, 3) = 1;
  pp(1, 1) = -2;
  CHECK(M.member(pp, Sub::p_prime));
  CHECK_FALSE(M.member(pp, Sub::q));
  QMatrix low = upper;
  low(3, 1) = 1;
  CHECK(M.member(low, Sub::p));
  CHECK_FALSE(M.member(low, Sub::p_prime));
  QMatrix gen = low;
  gen(2, 0) = 1;
  CHECK_FALSE(M.member(gen, Sub::p));
  CHECK(M.member(gen, Sub::g));
  CHECK(M.member(include_sl(upper), Sub::q));
  CHECK_THROWS_AS(M.member(QMatrix(3, 3), Sub::p), DomainError);
}

TEST_CASE("decomposition of so(n+1,n+1)") {
  AlgModel M = build_model(2);
  std::mt19937_64 rng(12);
  QMatrix A = testing::random_combo(rng, M.g_basis);
  auto pa = M.decompose(include_sl(A));
  CHECK(pa.ef0 == include_sl(A));
  CHECK(pa.ef_tr.is_zero());
  CHECK(pa.wedge_e.is_zero());
  CHECK(pa.wedge_f.is_zero());
  QMatrix up(6, 6);
  up(0, 4) = 1;
  up(1, 3) = -1;
  auto pu = M.decompose(up);
  CHECK(pu.wedge_e == up);
  CHECK(pu.ef0.is_zero());
  for (int t = 0; t < 5; ++t) {
    QMatrix X = testing::random_combo(rng, M.gt_basis);
    auto p = M.decompose(X);
    CHECK(p.ef0 + p.ef_tr + p.wedge_e + p.wedge_f == X);
    std::vector<QMatrix> parts = {p.ef0, p.ef_tr, p.wedge_e, p.wedge_f};
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        if (!(i == 2 && j == 3)) CHECK(M.killing(parts[i], parts[j], Algebra::so) == 0);
    CHECK(M.member(p.ef_tr + p.wedge_e + p.wedge_f, Sub::g_perp));
  }
  CHECK_THROWS_AS(M.decompose(QMatrix::unit(6, 6, 0, 1)), DomainError);
}

TEST_CASE("Jacobi identity and grading") {
  AlgModel M = build_model(3);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    QMatrix a = testing::random_combo(rng, M.gt_basis), b = testing::random_combo(rng, M.gt_basis),
            c = testing::random_combo(rng, M.gt_basis);
    CHECK((bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))).is_zero());
    CHECK(M.graded_part(a, -1) + M.graded_part(a, 0) + M.graded_part(a, 1) == a);
    CHECK(M.member(M.graded_part(a, 1), Sub::p_tilde_plus));
    CHECK(M.theta(M.theta(a)) == a);
    CHECK(M.theta(bracket(a, b)) == bracket(M.theta(a), M.theta(b)));
    CHECK(M.killing(a, M.theta(a), Algebra::so) < 0);
  }
  for (const auto& Z : M.gt_plus) CHECK(bracket(M.grading_so, Z) == Z);
  for (const auto& X : M.gt_minus) CHECK(bracket(M.grading_so, X) == -X);
  for (const auto& X : M.gt_minus) CHECK(M.member(M.theta(X), Sub::p_tilde_plus));
  CHECK(span_dim(M.gt_zero) == 28 - 12);
}

TEST_CASE("involution K and the intersection of p~+ with g_perp") {
  for (int n : {2, 3}) {
    AlgModel M = build_model(n);
    CHECK(M.is_skew(M.K));
    CHECK(M.K * M.K == QMatrix::identity(M.D));
    std::vector<QMatrix> both = M.gt_plus;
    for (const auto& Z : M.gt_plus) {
      auto p = M.decompose(Z);
      CHECK_FALSE(p.ef0.is_zero());
    }
    // p~+ ∩ g_perp = 0: projection to (E⊗F)_0 is injective on p~+
    std::vector<QMatrix> proj;
    for (const auto& Z : M.gt_plus) proj.push_back(M.decompose(Z).ef0);
    CHECK(span_dim(proj) == static_cast<std::size_t>(M.m));
  }
}

TEST_CASE("model JSON dump") {
  AlgModel M = build_model(2);
  auto s = M.to_json();
  CHECK(s.find("\"Z_tilde\"") != std::string::npos);
}
