#include "feff/liealg/model.hpp"

#include <functional>

#include "json.hpp"

namespace feff {

namespace {

using Constraint = std::function<QVector(const QMatrix&)>;

// Elements of span(basis) satisfying the linear constraints.
std::vector<QMatrix> solve_subspace(const std::vector<QMatrix>& basis, const Constraint& constraints) {
  std::vector<QVector> cols;
  for (const auto& b : basis) cols.push_back(constraints(b));
  std::size_t rows = cols.empty() ? 0 : cols[0].size();
  QMatrix A(rows, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t r = 0; r < rows; ++r) A(r, k) = cols[k][r];
  QMatrix ns = A.nullspace();
  std::vector<QMatrix> out;
  for (std::size_t c = 0; c < ns.cols(); ++c) {
    QMatrix M(basis[0].rows(), basis[0].cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (ns(k, c) != 0) M += basis[k] * ns(k, c);
    out.push_back(std::move(M));
  }
  return out;
}

QVector unit_vec(int D, int i) {
  QVector v(D, Rational(0));
  v[i] = 1;
  return v;
}

QMatrix outer(const QVector& a, const QVector& b) {
  QMatrix M(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) M(i, j) = a[i] * b[j];
  return M;
}

// Coordinates of an sl(N) element in the basis {E_ij (i != j)} ∪ {E_kk - E_{k+1,k+1}}.
QVector sl_coords(const QMatrix& X) {
  int N = static_cast<int>(X.rows());
  QVector c;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) c.push_back(X(i, j));
  Rational acc = 0;
  for (int k = 0; k + 1 < N; ++k) {
    acc += X(k, k);
    c.push_back(acc);
  }
  return c;
}

std::vector<QMatrix> sl_basis(int N) {
  std::vector<QMatrix> b;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) b.push_back(QMatrix::unit(N, N, i, j));
  for (int k = 0; k + 1 < N; ++k) {
    QMatrix H = QMatrix::unit(N, N, k, k);
    H(k + 1, k + 1) = -1;
    b.push_back(H);
  }
  return b;
}

std::vector<QMatrix> so_basis(int N) {
  int D = 2 * N;
  std::vector<QMatrix> b;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      QMatrix M(D, D);
      M(i, j) = 1;
      M(N + j, N + i) = -1;
      b.push_back(M);
    }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      QMatrix M(D, D);
      M(i, N + j) = 1;
      M(j, N + i) = -1;
      b.push_back(M);
    }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      QMatrix M(D, D);
      M(N + i, j) = 1;
      M(N + j, i) = -1;
      b.push_back(M);
    }
  return b;
}

QVector so_coords(const QMatrix& X, int N) { return skew_coords(X, N); }

Rational trace_product(const QMatrix& X, const QMatrix& Y) {
  Rational s = 0;
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t k = 0; k < X.cols(); ++k)
      if (X(i, k) != 0 && Y(k, i) != 0) s += X(i, k) * Y(k, i);
  return s;
}

}  // namespace

std::string to_string(Sub s) {
  switch (s) {
    case Sub::g: return "g";
    case Sub::p: return "p";
    case Sub::q: return "q";
    case Sub::p_prime: return "p'";
    case Sub::p_plus: return "p+";
    case Sub::g_perp: return "g_perp";
    case Sub::p_tilde: return "p~";
    case Sub::p_tilde_plus: return "p~+";
  }
  return "?";
}

QMatrix include_sl(const QMatrix& A) {
  if (A.rows() != A.cols()) throw DomainError("include_sl: matrix not square");
  if (A.trace() != 0) throw DomainError("include_sl: nonzero trace");
  std::size_t N = A.rows();
  QMatrix M(2 * N, 2 * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      M(i, j) = A(i, j);
      M(N + j, N + i) = -A(i, j);
    }
  return M;
}

bool in_span(const std::vector<QMatrix>& basis, const QMatrix& X) {
  if (X.is_zero()) return true;
  auto all = basis;
  all.push_back(X);
  return span_dim(all) == span_dim(basis);
}

QMatrix AlgModel::include(const QMatrix& A) const { return include_sl(A); }

bool AlgModel::is_skew(const QMatrix& X) const {
  if (X.rows() != static_cast<std::size_t>(D) || X.cols() != static_cast<std::size_t>(D)) return false;
  return (X.transpose() * h + h * X).is_zero();
}

QVector AlgModel::gt_coords(const QMatrix& X) const {
  if (!is_skew(X)) throw DomainError("element is not in so(n+1,n+1)");
  return so_coords(X, N);
}

Rational AlgModel::killing(const QMatrix& X, const QMatrix& Y, Algebra alg) const {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw DomainError("killing form: dimension mismatch");
  if (alg == Algebra::sl) {
    if (X.rows() != static_cast<std::size_t>(N)) throw DomainError("killing form: expected sl(n+1) element");
    return killing_sl * trace_product(X, Y);
  }
  if (X.rows() != static_cast<std::size_t>(D)) throw DomainError("killing form: expected so(n+1,n+1) element");
  return killing_so * trace_product(X, Y);
}

Rational AlgModel::killing_from_ad(const QMatrix& X, const QMatrix& Y, Algebra alg) const {
  const auto& basis = alg == Algebra::sl ? g_basis : gt_basis;
  auto coords = [&](const QMatrix& M) { return alg == Algebra::sl ? sl_coords(M) : so_coords(M, N); };
  QMatrix adX(basis.size(), basis.size()), adY(basis.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    QVector cx = coords(bracket(X, basis[k])), cy = coords(bracket(Y, basis[k]));
    for (std::size_t r = 0; r < basis.size(); ++r) {
      adX(r, k) = cx[r];
      adY(r, k) = cy[r];
    }
  }
  return (adX * adY).trace();
}

bool AlgModel::member(const QMatrix& X, Sub s) const {
  const auto sz = X.rows();
  if (X.rows() != X.cols() || (sz != static_cast<std::size_t>(N) && sz != static_cast<std::size_t>(D)))
    throw DomainError("membership: size mismatch");
  if (s == Sub::g_perp || s == Sub::p_tilde || s == Sub::p_tilde_plus) {
    if (sz != static_cast<std::size_t>(D)) throw DomainError("membership: expected so(n+1,n+1) element");
    if (!is_skew(X)) return false;
    if (s == Sub::g_perp) return decompose(X).ef0.is_zero();
    QVector w = X * v_plus_tilde;
    for (int k = 1; k + 1 < D; ++k)
      if (w[k] != 0) return false;
    if (s == Sub::p_tilde) return w[0] == w[D - 1];
    if (w[0] != 0 || w[D - 1] != 0) return false;
    // X(L^perp) ⊂ L, with L^perp spanned by e_1..e_{n-1}, f_1..f_n, e_n - f_0, e_0 + f_n
    std::vector<QVector> perp;
    for (int i = 1; i < n; ++i) perp.push_back(unit_vec(D, i));
    for (int i = 1; i <= n; ++i) perp.push_back(unit_vec(D, N + i));
    QVector u = unit_vec(D, n);
    u[N] = -1;
    perp.push_back(u);
    for (const auto& v : perp) {
      QVector y = X * v;
      for (int k = 1; k + 1 < D; ++k)
        if (y[k] != 0) return false;
      if (y[0] != y[D - 1]) return false;
    }
    return true;
  }
  QMatrix A = X;
  if (sz == static_cast<std::size_t>(D)) {
    QMatrix B(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) B(i, j) = X(i, j);
    if (B.trace() != 0 || !(include_sl(B) == X)) return false;
    A = B;
  }
  if (A.trace() != 0) return false;
  if (s == Sub::g) return true;
  if (s == Sub::p_plus) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (!(i == 0 && j >= 1) && A(i, j) != 0) return false;
    return true;
  }
  for (int a = 1; a < N; ++a)
    if (A(a, 0) != 0) return false;
  if (s == Sub::p) return true;
  for (int j = 1; j < n; ++j)
    if (A(n, j) != 0) return false;
  if (s == Sub::p_prime) return true;
  return A(n, n) == -A(0, 0);
}

GtildeParts AlgModel::decompose(const QMatrix& X) const {
  if (!is_skew(X)) throw DomainError("decompose: element is not h-skew");
  QMatrix A(N, N);
  GtildeParts parts{QMatrix(D, D), QMatrix(D, D), QMatrix(D, D), QMatrix(D, D)};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      A(i, j) = X(i, j);
      parts.wedge_e(i, N + j) = X(i, N + j);
      parts.wedge_f(N + i, j) = X(N + i, j);
    }
  Rational t = A.trace() / N;
  for (int i = 0; i < N; ++i) A(i, i) -= t;
  parts.ef0 = include_sl(A);
  parts.ef_tr = K * t;
  return parts;
}

QMatrix AlgModel::graded_part(const QMatrix& X, int j) const {
  QMatrix a1 = bracket(grading_so, X);
  QMatrix a2 = bracket(grading_so, a1);
  Rational half(1, 2);
  switch (j) {
    case 1: return (a2 + a1) * half;
    case -1: return (a2 - a1) * half;
    case 0: return X - a2;
    default: throw DomainError("graded_part: degree must be -1, 0 or 1");
  }
}

QVector AlgModel::quotient_coords(const QMatrix& X) const {
  QVector c(m);
  for (int i = 0; i < m; ++i) c[i] = killing(X, Z_tilde[i], Algebra::so);
  return c;
}

QMatrix AlgModel::theta(const QMatrix& X) const { return J * X * J; }

AlgModel build_model(int n) {
  if (n < 2) throw DomainError("build_model: n must be at least 2");
  if (n > kMaxBaseDim) throw DomainError("build_model: n above the supported maximum 5");
  AlgModel M;
  M.n = n;
  M.N = n + 1;
  M.D = 2 * (n + 1);
  M.m = 2 * n;
  const int N = M.N, D = M.D;

  M.h = QMatrix(D, D);
  for (int i = 0; i < N; ++i) M.h(i, N + i) = M.h(N + i, i) = 1;
  M.v_plus = unit_vec(N, 0);
  M.v_plus_tilde = unit_vec(D, 0);
  M.v_plus_tilde[D - 1] = 1;
  M.v_minus_tilde = unit_vec(D, N);
  M.K = QMatrix::identity(D);
  for (int i = N; i < D; ++i) M.K(i, i) = -1;

  // J: v+ <-> v-, e_i <-> f_i (0 < i < n), (e_n - f_0) <-> f_n
  {
    std::vector<QVector> src, dst;
    src.push_back(M.v_plus_tilde);
    dst.push_back(M.v_minus_tilde);
    src.push_back(M.v_minus_tilde);
    dst.push_back(M.v_plus_tilde);
    for (int i = 1; i < n; ++i) {
      src.push_back(unit_vec(D, i));
      dst.push_back(unit_vec(D, N + i));
      src.push_back(unit_vec(D, N + i));
      dst.push_back(unit_vec(D, i));
    }
    QVector u = unit_vec(D, n);
    u[N] = -1;
    src.push_back(u);
    dst.push_back(unit_vec(D, D - 1));
    src.push_back(unit_vec(D, D - 1));
    dst.push_back(u);
    QMatrix S(D, D), T(D, D);
    for (int k = 0; k < D; ++k)
      for (int r = 0; r < D; ++r) {
        S(r, k) = src[k][r];
        T(r, k) = dst[k][r];
      }
    M.J = T * S.inverse();
  }

  M.g_basis = sl_basis(N);
  M.gt_basis = so_basis(N);

  // Killing constants from the adjoint representation.
  {
    QMatrix a = QMatrix::unit(N, N, 1, 0), b = QMatrix::unit(N, N, 0, 1);
    M.killing_sl = 1;
    M.killing_so = 1;
    M.killing_sl = M.killing_from_ad(a, b, Algebra::sl) / trace_product(a, b);
    QMatrix A = include_sl(a), B = include_sl(b);
    M.killing_so = M.killing_from_ad(A, B, Algebra::so) / trace_product(A, B);
    M.c = M.killing_so * trace_product(A, B) / (M.killing_sl * trace_product(a, b));
  }

  // Projective grading: g_{-1} = column 0 below the diagonal.
  M.grading_sl = QMatrix(N, N);
  M.grading_sl(0, 0) = Rational(n, n + 1);
  for (int i = 1; i < N; ++i) M.grading_sl(i, i) = Rational(-1, n + 1);
  for (int a = 1; a < N; ++a) M.g_minus.push_back(QMatrix::unit(N, N, a, 0));
  for (int b = 1; b < N; ++b) M.g_plus.push_back(QMatrix::unit(N, N, 0, b));
  for (const auto& B : M.g_basis)
    if (bracket(M.grading_sl, B).is_zero()) M.g_zero.push_back(B);
  M.p_basis = M.g_zero;
  M.p_basis.insert(M.p_basis.end(), M.g_plus.begin(), M.g_plus.end());
  M.q_basis = solve_subspace(M.p_basis, [&](const QMatrix& A) {
    QVector c;
    for (int j = 1; j < n; ++j) c.push_back(A(n, j));
    c.push_back(A(n, n) + A(0, 0));
    return c;
  });
  M.p_prime_basis = solve_subspace(M.p_basis, [&](const QMatrix& A) {
    QVector c;
    for (int j = 1; j < n; ++j) c.push_back(A(n, j));
    return c;
  });

  // Conformal grading element: +1 on v+, -1 on v-, 0 on the middle.
  M.grading_so = outer(M.v_plus_tilde, M.h * M.v_minus_tilde) - outer(M.v_minus_tilde, M.h * M.v_plus_tilde);

  // Basis X_1..X_m of g/q.
  for (int a = 1; a <= n; ++a) M.X.push_back(QMatrix::unit(N, N, a, 0));
  for (int j = 1; j < n; ++j) M.X.push_back(QMatrix::unit(N, N, n, j));
  {
    QMatrix H(N, N);
    H(0, 0) = 1;
    H(n, n) = 1;
    H(1, 1) = -2;
    M.X.push_back(H);
  }
  for (const auto& x : M.X) {
    M.X_incl.push_back(include_sl(x));
    M.X_hat.push_back(M.graded_part(M.X_incl.back(), -1));
  }

  M.gt_minus = M.X_hat;
  M.gt_zero = solve_subspace(M.gt_basis, [&](const QMatrix& X) { return so_coords(bracket(M.grading_so, X), N); });
  std::vector<QMatrix> pt_plus = solve_subspace(M.gt_basis, [&](const QMatrix& X) {
    QMatrix a = bracket(M.grading_so, X) - X;
    return so_coords(a, N);
  });

  // Killing-dual bases.
  {
    QMatrix G(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) G(i, k) = M.killing(M.X_incl[i], include_sl(M.g_plus[k]), Algebra::so);
    QMatrix Gi = G.inverse();
    for (int j = 0; j < n; ++j) {
      QMatrix Zj(N, N);
      for (int k = 0; k < n; ++k) Zj += M.g_plus[k] * Gi(k, j);
      M.Z.push_back(Zj);
      M.Z_incl.push_back(include_sl(Zj));
    }
  }
  {
    int m = M.m;
    QMatrix G(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) G(i, k) = M.killing(M.X_incl[i], pt_plus[k], Algebra::so);
    QMatrix Gi = G.inverse();
    for (int j = 0; j < m; ++j) {
      QMatrix Zj(D, D);
      for (int k = 0; k < m; ++k) Zj += pt_plus[k] * Gi(k, j);
      M.Z_tilde.push_back(Zj);
    }
  }
  M.gt_plus = M.Z_tilde;
  M.p_tilde_basis = M.gt_zero;
  M.p_tilde_basis.insert(M.p_tilde_basis.end(), M.gt_plus.begin(), M.gt_plus.end());

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      QMatrix L(D, D);
      L(N + i, j) = 1;
      L(N + j, i) = -1;
      M.lambda2_fbar.push_back(L);
    }
  return M;
}

std::string AlgModel::to_json() const {
  using nlohmann::json;
  auto entry = [](const Rational& q) -> json {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
  };
  auto mat = [&](const QMatrix& A) {
    json rows = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) {
      json r = json::array();
      for (std::size_t j = 0; j < A.cols(); ++j) r.push_back(entry(A(i, j)));
      rows.push_back(r);
    }
    return rows;
  };
  auto list = [&](const std::vector<QMatrix>& v) {
    json a = json::array();
    for (const auto& A : v) a.push_back(mat(A));
    return a;
  };
  json j;
  j["n"] = n;
  j["h"] = mat(h);
  j["killing_constant_ratio"] = c.get_str();
  j["X"] = list(X);
  j["Z"] = list(Z);
  j["Z_tilde"] = list(Z_tilde);
  j["q"] = list(q_basis);
  j["p"] = list(p_basis);
  j["p_prime"] = list(p_prime_basis);
  j["K"] = mat(K);
  return j.dump(1);
}

}  // namespace feff
