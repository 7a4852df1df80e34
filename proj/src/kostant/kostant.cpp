#include "feff/kostant/kostant.hpp"

#include <optional>

namespace feff {

namespace {

QMatrix theta_sl(const QMatrix& A) { return A.transpose() * Rational(-1); }

QMatrix columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix A(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) A(r, c) = cols[c][r];
  return A;
}

// (A^t A)^{-1} A^t for A of full column rank.
QMatrix left_inverse(const QMatrix& A) {
  QMatrix At = A.transpose();
  return (At * A).inverse() * At;
}

QMatrix from_skew_coords(const AlgModel& M, const Rational* c) {
  QMatrix X(M.D, M.D);
  for (std::size_t k = 0; k < M.gt_basis.size(); ++k)
    if (c[k] != 0) X += M.gt_basis[k] * c[k];
  return X;
}

}  // namespace

Kostant::Kostant(const AlgModel& M) : M_(&M) {
  for (int i = 0; i < M.n; ++i) {
    X_q_[0].push_back(M.X[i]);
    Z_q_[0].push_back(M.Z[i]);
  }
  X_q_[1] = M.X_hat;
  Z_q_[1] = M.Z_tilde;
  for (int s = 0; s < 2; ++s) {
    for (const auto& x : X_q_[s]) X_f_[s].push_back(feff::lift(x));
    for (const auto& z : Z_q_[s]) Z_f_[s].push_back(feff::lift(z));
    const int d = static_cast<int>(X_q_[s].size());
    for (int i = 0; i < d; ++i)
      for (int x = 0; x < d; ++x) {
        QMatrix br = bracket(Z_q_[s][i], X_q_[s][x]);
        QVector q(d);
        for (int j = 0; j < d; ++j)
          q[j] = s == 0 ? Rational(M.killing(br, Z_q_[0][j], Algebra::sl) * M.c) : M.killing(br, Z_q_[1][j], Algebra::so);
        quotient_of_bracket_[s].push_back(std::move(q));
      }
    QMatrix G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        G(i, j) = s == 0 ? Rational(-M.c * M.killing(theta_sl(X_q_[0][i]), X_q_[0][j], Algebra::sl))
                         : Rational(-M.killing(M.theta(X_q_[1][i]), X_q_[1][j], Algebra::so));
    gram_inv_[s] = G.inverse();
  }
  build_image();
  build_components();

  std::vector<QVector> cols;
  for (const auto& L : M.lambda2_fbar) {
    lambda2_fbar_0_.push_back(M.graded_part(L, 0));
    cols.push_back(skew_coords(lambda2_fbar_0_.back(), M.N));
  }
  QMatrix P0 = columns(cols, M.gt_basis.size());
  if (P0.rank() != cols.size()) throw ConsistencyError("projection of Λ²F̄ to g~_0 is not injective");
  lift_left_ = left_inverse(P0);
}

Rational Kostant::pairing(const Cochain<Rational>& a, const Cochain<Rational>& b) const {
  if (a.arity != b.arity || a.side != b.side) throw DomainError("pairing: cochains of different type");
  check(a, a.arity);
  check(b, b.arity);
  const int s = side_index(a.side);
  auto bt = [&](const QMatrix& x, const QMatrix& y) -> Rational {
    if (x.is_zero() || y.is_zero()) return 0;
    if (s == 0) return -M_->c * M_->killing(theta_sl(x), y, Algebra::sl);
    return -M_->killing(M_->theta(x), y, Algebra::so);
  };
  const QMatrix& Gi = gram_inv_[s];
  const int d = a.dim;
  Rational sum = 0;
  if (a.arity == 0) return bt(a.v[0], b.v[0]);
  if (a.arity == 1) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (Gi(i, j) != 0) sum += Gi(i, j) * bt(a.at(i), b.at(j));
    return sum;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          if (Gi(i, k) != 0 && Gi(j, l) != 0) sum += Gi(i, k) * Gi(j, l) * bt(a.at(i, j), b.at(k, l));
  return sum;
}

void Kostant::build_image() {
  const AlgModel& M = *M_;
  const int m = M.m;
  const std::size_t so_dim = M.gt_basis.size();
  std::vector<QVector> rows;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        Cochain<Rational> k = zero<Rational>(Side::conformal, 2);
        k.at(a, b) = M.X_hat[c];
        k.at(b, a) = M.X_hat[c] * Rational(-1);
        rows.push_back(flatten(codifferential(k)));
      }
  QMatrix R(rows.size(), m * so_dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < rows[r].size(); ++k) R(r, k) = rows[r][k];
  std::size_t rank = R.rref_in_place().size();
  std::vector<QVector> cols;
  for (std::size_t r = 0; r < rank; ++r) {
    QVector flat = R.row(r);
    Cochain<Rational> w = zero<Rational>(Side::conformal, 1);
    for (int i = 0; i < m; ++i) w.at(i) = from_skew_coords(M, flat.data() + i * so_dim);
    if (!values_in_g0(w)) throw ConsistencyError("homogeneity-one image of ∂* leaves g~_0");
    W_basis_.push_back(std::move(w));
    cols.push_back(std::move(flat));
  }
  w_flat_ = columns(cols, m * so_dim);
  w_left_ = left_inverse(w_flat_);
  QMatrix box(rank, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    QVector c = w_coords(laplacian(W_basis_[k]));
    for (std::size_t r = 0; r < rank; ++r) box(r, k) = c[r];
  }
  if (box.rank() != rank) throw ConsistencyError("□ is not invertible on im ∂*");
  box_inv_W_ = box.inverse();
}

namespace {

// s_a (scalar part) followed by T_abc = g([A_a, X_b], X_c) for A_a the trace-free part of φ(X_a).
struct TensorMap {
  int m = 0;
  QMatrix g, g_inv;
  std::size_t size() const { return m + m * m * m; }
  std::size_t t(int a, int b, int c) const { return m + (a * m + b) * m + c; }
};

}  // namespace

void Kostant::build_components() {
  const AlgModel& M = *M_;
  const int m = M.m;
  TensorMap tm;
  tm.m = m;
  tm.g = QMatrix(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      QVector xa = M.X_hat[a] * M.v_plus_tilde, xb = M.X_hat[b] * M.v_plus_tilde;
      QVector hx = M.h * xb;
      Rational s = 0;
      for (int k = 0; k < M.D; ++k) s += xa[k] * hx[k];
      tm.g(a, b) = s;
    }
  if (tm.g.rank() != static_cast<std::size_t>(m)) throw ConsistencyError("degenerate metric on g~/p~");
  tm.g_inv = tm.g.inverse();
  const QMatrix& G = M.grading_so;
  const Rational GG = M.killing(G, G, Algebra::so);

  auto phi_map = [&](const Cochain<Rational>& phi) {
    QVector v(tm.size());
    for (int a = 0; a < m; ++a) {
      const QMatrix& A = phi.at(a);
      if (A.is_zero()) continue;
      Rational s = M.killing(A, G, Algebra::so) / GG;
      v[a] = s;
      QMatrix A0 = A - G * s;
      for (int b = 0; b < m; ++b) {
        QVector q = M.quotient_coords(bracket(A0, M.X_hat[b]));
        for (int c = 0; c < m; ++c) {
          Rational t = 0;
          for (int d = 0; d < m; ++d) t += tm.g(c, d) * q[d];
          v[tm.t(a, b, c)] = t;
        }
      }
    }
    return v;
  };

  const std::size_t w = W_basis_.size();
  std::vector<QVector> pcols;
  for (const auto& b : W_basis_) pcols.push_back(phi_map(b));
  QMatrix P = columns(pcols, tm.size());

  auto constrained = [&](const std::vector<QVector>& constraints) {
    QMatrix C(constraints.size(), tm.size());
    for (std::size_t r = 0; r < constraints.size(); ++r)
      for (std::size_t k = 0; k < tm.size(); ++k) C(r, k) = constraints[r][k];
    return (C * P).nullspace();
  };
  std::vector<QVector> scalar_free;
  for (int a = 0; a < m; ++a) {
    QVector r(tm.size());
    r[a] = 1;
    scalar_free.push_back(r);
  }

  std::array<QMatrix, 3> coeffs;
  {
    auto cons = scalar_free;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          QVector r(tm.size());
          r[tm.t(a, b, c)] += 1;
          r[tm.t(b, a, c)] += 1;
          cons.push_back(r);
        }
    coeffs[static_cast<int>(Component::alt)] = constrained(cons);
  }
  {
    auto cons = scalar_free;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          QVector r(tm.size());
          r[tm.t(a, b, c)] += 1;
          r[tm.t(b, c, a)] += 1;
          r[tm.t(c, a, b)] += 1;
          cons.push_back(r);
        }
    for (int c = 0; c < m; ++c) {
      QVector r(tm.size());
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) r[tm.t(a, b, c)] += tm.g_inv(a, b);
      cons.push_back(r);
    }
    coeffs[static_cast<int>(Component::odot)] = constrained(cons);
  }
  {
    // span of the vector-type tensors, intersected with the image
    std::vector<QVector> u;
    for (int e = 0; e < m; ++e) {
      QVector r(tm.size());
      r[e] = 1;
      u.push_back(r);
      QVector t(tm.size());
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          t[tm.t(a, b, e)] += tm.g(a, b);
          t[tm.t(a, e, b)] -= tm.g(a, b);
        }
      u.push_back(t);
    }
    QMatrix A(tm.size(), w + u.size());
    for (std::size_t k = 0; k < tm.size(); ++k) {
      for (std::size_t c = 0; c < w; ++c) A(k, c) = P(k, c);
      for (std::size_t c = 0; c < u.size(); ++c) A(k, w + c) = -u[c][k];
    }
    QMatrix ns = A.nullspace();
    std::vector<QVector> parts;
    for (std::size_t c = 0; c < ns.cols(); ++c) {
      QVector x(w);
      for (std::size_t r = 0; r < w; ++r) x[r] = ns(r, c);
      parts.push_back(std::move(x));
    }
    coeffs[static_cast<int>(Component::tr)] = columns(parts, w);
  }

  std::vector<QVector> all;
  for (int k = 0; k < 3; ++k)
    for (std::size_t c = 0; c < coeffs[k].cols(); ++c) {
      QVector x = coeffs[k].col(c);
      all.push_back(x);
      Cochain<Rational> b = zero<Rational>(Side::conformal, 1);
      for (std::size_t r = 0; r < w; ++r)
        if (x[r] != 0) b += W_basis_[r] * x[r];
      comp_basis_[k].push_back(std::move(b));
    }
  if (all.size() != w) throw ConsistencyError("component dimensions do not add up to dim im ∂*");
  QMatrix Call = columns(all, w);
  if (Call.rank() != w) throw ConsistencyError("components of im ∂* are not independent");
  comp_left_ = Call.inverse();
}

Cochain<Rational> Kostant::act(const QMatrix& Y, const Cochain<Rational>& phi) const {
  check(phi, 1);
  if (phi.side != Side::conformal || !M_->member(Y, Sub::p_tilde)) throw DomainError("act: expected p~ acting on a conformal cochain");
  Cochain<Rational> out = zero<Rational>(Side::conformal, 1);
  for (int x = 0; x < M_->m; ++x) {
    out.at(x) = bracket(Y, phi.at(x));
    QVector q = M_->quotient_coords(bracket(Y, M_->X_hat[x]));
    for (int j = 0; j < M_->m; ++j)
      if (q[j] != 0) out.at(x) -= phi.at(j) * q[j];
  }
  return out;
}

bool Kostant::values_in_g0(const Cochain<Rational>& phi) const {
  if (phi.side != Side::conformal || phi.arity != 1) return false;
  for (const auto& A : phi.v)
    if (!M_->is_skew(A) || !(M_->graded_part(A, 0) == A)) return false;
  return true;
}

bool Kostant::in_image(const Cochain<Rational>& phi) const {
  if (!values_in_g0(phi)) return false;
  try {
    w_coords(phi);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

Split<Rational> Kostant::split(const Cochain<Rational>& phi) const {
  QVector c = w_coords(phi);
  QVector y = comp_left_ * c;
  Split<Rational> out{zero<Rational>(Side::conformal, 1), zero<Rational>(Side::conformal, 1),
                      zero<Rational>(Side::conformal, 1)};
  std::size_t idx = 0;
  for (int k = 0; k < 3; ++k) {
    Cochain<Rational>& dst = k == 0 ? out.tr : k == 1 ? out.alt : out.odot;
    for (const auto& b : comp_basis_[k]) {
      if (y[idx] != 0) dst += b * y[idx];
      ++idx;
    }
  }
  return out;
}

Rational Kostant::box_scalar(Component c) const {
  const auto& basis = comp_basis_[static_cast<int>(c)];
  if (basis.empty()) throw ConsistencyError("empty component");
  std::optional<Rational> lambda;
  for (const auto& b : basis) {
    Cochain<Rational> lb = laplacian(b);
    if (!lambda) {
      for (int i = 0; i < b.dim && !lambda; ++i)
        for (std::size_t r = 0; r < b.at(i).rows() && !lambda; ++r)
          for (std::size_t k = 0; k < b.at(i).cols(); ++k)
            if (b.at(i)(r, k) != 0) {
              lambda = lb.at(i)(r, k) / b.at(i)(r, k);
              break;
            }
    }
    if (!(lb == b * *lambda)) throw ConsistencyError("□ does not act by a scalar on the component");
  }
  return *lambda;
}

bool Kostant::in_f_lambda2f(const Cochain<Rational>& phi) const {
  if (!values_in_g0(phi)) return false;
  const AlgModel& M = *M_;
  const QMatrix& G = M.grading_so;
  for (int a = 0; a < M.m; ++a) {
    const QMatrix& A = phi.at(a);
    if (A.is_zero()) continue;
    if (a >= M.n) return false;
    if (M.killing(A, G, Algebra::so) != 0) return false;
    for (int b = 0; b < M.m; ++b) {
      QVector q = M.quotient_coords(bracket(A, M.X_hat[b]));
      for (int c = 0; c < M.m; ++c)
        if (q[c] != 0 && (c < M.n || b >= M.n)) return false;
    }
  }
  return true;
}

std::size_t Kostant::p_tilde_plus_meet_g_perp() const {
  const AlgModel& M = *M_;
  QMatrix C(M.g_basis.size(), M.gt_basis.size());
  for (std::size_t j = 0; j < M.g_basis.size(); ++j) {
    QMatrix gj = include_sl(M.g_basis[j]);
    for (std::size_t k = 0; k < M.gt_basis.size(); ++k) C(j, k) = M.killing(gj, M.gt_basis[k], Algebra::so);
  }
  QMatrix ns = C.nullspace();
  std::vector<QMatrix> perp;
  for (std::size_t c = 0; c < ns.cols(); ++c) perp.push_back(from_skew_coords(M, ns.col(c).data()));
  std::vector<QMatrix> both = perp;
  both.insert(both.end(), M.gt_plus.begin(), M.gt_plus.end());
  return span_dim(perp) + span_dim(M.gt_plus) - span_dim(both);
}

}  // namespace feff
