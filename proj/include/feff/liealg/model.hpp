#pragma once

#include <string>
#include <vector>

#include "feff/symcore/matrix.hpp"

namespace feff {

enum class Algebra { sl, so };

enum class Sub { g, p, q, p_prime, p_plus, g_perp, p_tilde, p_tilde_plus };

std::string to_string(Sub s);

/// The four g-isotypic pieces of an element of so(n+1,n+1).
struct GtildeParts {
  QMatrix ef0;     // (E⊗F)_0, the image of sl(n+1)
  QMatrix ef_tr;   // multiple of K
  QMatrix wedge_e; // upper-right block
  QMatrix wedge_f; // lower-left block
};

/// Matrix models of sl(n+1) ⊂ so(n+1,n+1) with the parabolics and dual bases
/// used throughout. Index conventions on R^{n+1,n+1}:
///   e_0..e_n  -> 0..n       (the summand E)
///   f_0..f_n  -> n+1..2n+1  (the summand F, paired with E by h)
struct AlgModel {
  int n = 0;
  int N = 0;  // n + 1
  int D = 0;  // 2n + 2
  int m = 0;  // 2n

  QMatrix h;
  QVector v_plus;         // in R^{n+1}
  QVector v_plus_tilde;   // e_0 + f_n
  QVector v_minus_tilde;  // f_0, null with h(v+, v-) = 1
  QMatrix K;              // +1 on E, -1 on F
  QMatrix J;              // h-isometric involution swapping v+ and v-, h*J positive definite

  Rational killing_sl;  // B(X,Y) = killing_sl * tr(XY) on sl(n+1)
  Rational killing_so;  // B~(X,Y) = killing_so * tr(XY) on so(n+1,n+1)
  Rational c;           // B~ restricted to g equals c * B

  // sl(n+1), (n+1)x(n+1) matrices
  std::vector<QMatrix> g_basis;
  std::vector<QMatrix> g_minus, g_zero, g_plus;  // projective grading
  std::vector<QMatrix> p_basis, q_basis, p_prime_basis;
  QMatrix grading_sl;

  // so(n+1,n+1), (2n+2)x(2n+2) matrices
  std::vector<QMatrix> gt_basis;
  std::vector<QMatrix> gt_minus, gt_zero, gt_plus;  // conformal grading
  std::vector<QMatrix> p_tilde_basis;
  std::vector<QMatrix> lambda2_fbar;  // Λ²F̄
  QMatrix grading_so;

  // X_1..X_m in g inducing a basis of g/q; X_1..X_n span g_{-1}.
  std::vector<QMatrix> X;
  std::vector<QMatrix> X_incl;  // i'(X_i)
  std::vector<QMatrix> X_hat;   // g~_{-1} representative of X_i mod p~
  std::vector<QMatrix> Z;       // in p_+, B~(X_i, Z_j) = delta
  std::vector<QMatrix> Z_incl;
  std::vector<QMatrix> Z_tilde;  // in p~_+, B~(X_i, Z~_j) = delta, j = 1..m

  QMatrix include(const QMatrix& A) const;
  /// Killing form, computed from the trace form and the stored constant.
  Rational killing(const QMatrix& X, const QMatrix& Y, Algebra alg) const;
  /// Killing form computed directly as tr(ad X ad Y) in the given basis.
  Rational killing_from_ad(const QMatrix& X, const QMatrix& Y, Algebra alg) const;

  bool member(const QMatrix& X, Sub s) const;
  GtildeParts decompose(const QMatrix& X) const;
  bool is_skew(const QMatrix& X) const;

  /// Graded component of an so(n+1,n+1) element, j in {-1, 0, 1}.
  QMatrix graded_part(const QMatrix& X, int j) const;
  /// Coordinates of X mod p~ in the basis X_hat.
  QVector quotient_coords(const QMatrix& X) const;
  /// Cartan involution compatible with the conformal grading.
  QMatrix theta(const QMatrix& X) const;
  /// Coordinates of X in gt_basis.
  QVector gt_coords(const QMatrix& X) const;

  std::string to_json() const;
};

/// Throws DomainError for n < 2 or n > 5.
AlgModel build_model(int n);

/// A ↦ blockdiag(A, -A^t); throws DomainError on nonzero trace.
QMatrix include_sl(const QMatrix& A);

/// Coordinates of an h-skew matrix in the basis gt_basis, read off its entries.
template <class T>
std::vector<T> skew_coords(const Matrix<T>& X, int N) {
  std::vector<T> c;
  c.reserve(N * N + N * (N - 1));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) c.push_back(X(i, j));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) c.push_back(X(i, N + j));
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) c.push_back(X(N + i, j));
  return c;
}

/// True iff X lies in the linear span of `basis`.
bool in_span(const std::vector<QMatrix>& basis, const QMatrix& X);

}  // namespace feff
