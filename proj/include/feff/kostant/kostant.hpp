#pragma once

#include <array>
#include <type_traits>
#include <utility>
#include <vector>

#include "feff/errors.hpp"
#include "feff/liealg/model.hpp"
#include "feff/symcore/ratfunc.hpp"

namespace feff {

/// projective: (sl(n+1), p) with quotient g_{-1};  conformal: (so(n+1,n+1), p~) with quotient g~_{-1}.
enum class Side { projective, conformal };

/// Cochain on the quotient g/p (dim n) or g~/p~ (dim 2n), stored on the frame X_i.
template <class T>
struct Cochain {
  int arity = 1;
  Side side = Side::conformal;
  int dim = 0;
  std::vector<Matrix<T>> v;  // arity 0: one value, arity 1: dim values, arity 2: dim*dim values

  Matrix<T>& at(int i) { return v[i]; }
  const Matrix<T>& at(int i) const { return v[i]; }
  Matrix<T>& at(int i, int j) { return v[i * dim + j]; }
  const Matrix<T>& at(int i, int j) const { return v[i * dim + j]; }

  bool is_zero() const {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_alternating() const {
    if (arity != 2) return true;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j)
        if (!(at(i, j) + at(j, i)).is_zero()) return false;
    return true;
  }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.arity == b.arity && a.side == b.side && a.v == b.v;
  }
  Cochain& operator+=(const Cochain& o) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
  }
  Cochain& operator*=(const T& c) {
    for (auto& x : v) x *= c;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(Cochain a, const T& c) { return a *= c; }
};

/// The three pieces of an element of im ∂* in (g~/p~)*⊗g~_0.
enum class Component { tr, alt, odot };

template <class T>
struct Split {
  Cochain<T> tr, alt, odot;
};

class Kostant {
 public:
  explicit Kostant(const AlgModel& M);

  const AlgModel& model() const { return *M_; }
  int dim(Side s) const { return s == Side::projective ? M_->n : M_->m; }
  int value_size(Side s) const { return s == Side::projective ? M_->N : M_->D; }

  template <class T>
  Cochain<T> zero(Side s, int arity) const {
    Cochain<T> c;
    c.arity = arity;
    c.side = s;
    c.dim = dim(s);
    std::size_t count = arity == 0 ? 1 : arity == 1 ? c.dim : c.dim * c.dim;
    c.v.assign(count, Matrix<T>(value_size(s), value_size(s)));
    return c;
  }

  /// ∂*: arity 2 -> 1 as 2Σ[κ(X_i,X),Z_i] + Σ κ([Z_i,X] mod p, X_i); arity 1 -> 0 as Σ[φ(X_i),Z_i].
  template <class T>
  Cochain<T> codifferential(const Cochain<T>& k) const {
    if (k.arity == 2) {
      auto [a, b] = codifferential_split(k);
      return a + b;
    }
    check(k, 1);
    Cochain<T> out = zero<T>(k.side, 0);
    const auto& Z = coframe<T>(k.side);
    for (int i = 0; i < k.dim; ++i) out.v[0] += bracket(k.at(i), Z[i]);
    return out;
  }

  template <class T>
  std::pair<Cochain<T>, Cochain<T>> codifferential_split(const Cochain<T>& k) const {
    check(k, 2);
    if (!k.is_alternating()) throw DomainError("codifferential: cochain is not alternating");
    Cochain<T> one = zero<T>(k.side, 1), two = zero<T>(k.side, 1);
    const auto& Z = coframe<T>(k.side);
    const int d = k.dim;
    const T twice(2);
    for (int x = 0; x < d; ++x)
      for (int i = 0; i < d; ++i) {
        if (!k.at(i, x).is_zero()) one.at(x) += bracket(k.at(i, x), Z[i]) * twice;
        const QVector& q = quotient_of_bracket_[side_index(k.side)][i * d + x];
        for (int j = 0; j < d; ++j)
          if (q[j] != 0) two.at(x) += k.at(j, i) * T(q[j]);
      }
    return {std::move(one), std::move(two)};
  }

  /// ∂: arity 0 -> 1 as X ↦ [X,A]; arity 1 -> 2 as (X,Y) ↦ [X,φ(Y)] - [Y,φ(X)] (the quotients are abelian).
  template <class T>
  Cochain<T> differential(const Cochain<T>& phi) const {
    const auto& X = frame<T>(phi.side);
    if (phi.arity == 0) {
      check(phi, 0);
      Cochain<T> out = zero<T>(phi.side, 1);
      for (int i = 0; i < phi.dim; ++i) out.at(i) = bracket(X[i], phi.v[0]);
      return out;
    }
    check(phi, 1);
    Cochain<T> out = zero<T>(phi.side, 2);
    for (int i = 0; i < phi.dim; ++i)
      for (int j = i + 1; j < phi.dim; ++j) {
        Matrix<T> val = bracket(X[i], phi.at(j)) - bracket(X[j], phi.at(i));
        out.at(j, i) = val * T(-1);
        out.at(i, j) = std::move(val);
      }
    return out;
  }

  /// □ = ∂∂* + ∂*∂ on arity-1 cochains, ∂*∂ on arity 0.
  template <class T>
  Cochain<T> laplacian(const Cochain<T>& phi) const {
    if (phi.arity == 0) return codifferential(differential(phi));
    check(phi, 1);
    return differential(codifferential(phi)) + codifferential(differential(phi));
  }

  /// Positive inner product built from -B(θ·,·) on values and frame; ⟨∂φ,ψ⟩ = -⟨φ,∂*ψ⟩.
  Rational pairing(const Cochain<Rational>& a, const Cochain<Rational>& b) const;

  /// Infinitesimal action of Y ∈ p~ on a conformal arity-1 cochain.
  Cochain<Rational> act(const QMatrix& Y, const Cochain<Rational>& phi) const;

  // Homogeneity-one piece W = im ∂* ∩ (g~/p~)*⊗g~_0 on the conformal side.
  std::size_t image_dim() const { return W_basis_.size(); }
  const std::vector<Cochain<Rational>>& image_basis() const { return W_basis_; }
  bool values_in_g0(const Cochain<Rational>& phi) const;
  bool in_image(const Cochain<Rational>& phi) const;
  std::size_t component_dim(Component c) const { return comp_basis_[static_cast<int>(c)].size(); }
  const std::vector<Cochain<Rational>>& component_basis(Component c) const {
    return comp_basis_[static_cast<int>(c)];
  }
  /// Throws DomainError outside W.
  Split<Rational> split(const Cochain<Rational>& phi) const;
  /// Scalar by which □ acts on a component; throws ConsistencyError if the action is not scalar.
  Rational box_scalar(Component c) const;
  /// □^{-1} on W; throws DomainError outside W.
  template <class T>
  Cochain<T> box_inverse(const Cochain<T>& phi) const {
    auto c = w_coords(phi);
    std::vector<T> y(c.size(), T(0));
    for (std::size_t r = 0; r < c.size(); ++r)
      for (std::size_t k = 0; k < c.size(); ++k)
        if (box_inv_W_(r, k) != 0) y[r] += c[k] * T(box_inv_W_(r, k));
    Cochain<T> out = zero<T>(Side::conformal, 1);
    for (std::size_t r = 0; r < y.size(); ++r)
      for (int i = 0; i < M_->m; ++i)
        if (!W_basis_[r].at(i).is_zero()) out.at(i) += as<T>(W_basis_[r].at(i)) * y[r];
    return out;
  }

  /// φ vanishes on f = p/q and takes values in Λ²f ⊂ g~_0.
  bool in_f_lambda2f(const Cochain<Rational>& phi) const;
  /// The unique cochain with values in Λ²F̄ whose g~_0 part is phi0; throws DomainError if none exists.
  template <class T>
  Cochain<T> lift_to_fbar(const Cochain<T>& phi0) const {
    check(phi0, 1);
    if (phi0.side != Side::conformal) throw DomainError("lift: expected a conformal cochain");
    Cochain<T> out = zero<T>(Side::conformal, 1);
    const auto& L = M_->lambda2_fbar;
    for (int i = 0; i < M_->m; ++i) {
      if (phi0.at(i).is_zero()) continue;
      std::vector<T> flat = skew_coords(phi0.at(i), M_->N);
      std::vector<T> coef(L.size(), T(0));
      for (std::size_t r = 0; r < L.size(); ++r)
        for (std::size_t k = 0; k < flat.size(); ++k)
          if (lift_left_(r, k) != 0) coef[r] += flat[k] * T(lift_left_(r, k));
      Matrix<T> val(M_->D, M_->D), back(M_->D, M_->D);
      for (std::size_t r = 0; r < L.size(); ++r) {
        if (is_zero_value(coef[r])) continue;
        val += as<T>(L[r]) * coef[r];
        back += as<T>(lambda2_fbar_0_[r]) * coef[r];
      }
      if (!(back == phi0.at(i))) throw DomainError("lift: value has no preimage in Λ²F̄");
      out.at(i) = std::move(val);
    }
    return out;
  }

  /// dim(p~_+ ∩ g^⊥), computed by ranks.
  std::size_t p_tilde_plus_meet_g_perp() const;

  template <class T>
  const std::vector<Matrix<T>>& frame(Side s) const {
    if constexpr (std::is_same_v<T, Rational>) return X_q_[side_index(s)];
    else return X_f_[side_index(s)];
  }
  template <class T>
  const std::vector<Matrix<T>>& coframe(Side s) const {
    if constexpr (std::is_same_v<T, Rational>) return Z_q_[side_index(s)];
    else return Z_f_[side_index(s)];
  }

 private:
  static int side_index(Side s) { return s == Side::projective ? 0 : 1; }
  template <class T>
  static Matrix<T> as(const QMatrix& A) {
    if constexpr (std::is_same_v<T, Rational>) return A;
    else return feff::lift(A);
  }
  static bool is_zero_value(const Rational& x) { return x == 0; }
  static bool is_zero_value(const RatFunc& x) { return feff::is_zero(x); }

  template <class T>
  void check(const Cochain<T>& c, int arity) const {
    if (c.arity != arity) throw DomainError("cochain: wrong arity");
    std::size_t count = arity == 0 ? 1 : arity == 1 ? dim(c.side) : dim(c.side) * dim(c.side);
    if (c.dim != dim(c.side) || c.v.size() != count) throw DomainError("cochain: side mismatch");
    for (const auto& x : c.v)
      if (x.rows() != static_cast<std::size_t>(value_size(c.side)))
        throw DomainError("cochain: side mismatch");
  }

  template <class T>
  std::vector<T> flatten(const Cochain<T>& phi) const {
    std::vector<T> out;
    for (int i = 0; i < M_->m; ++i) {
      auto c = skew_coords(phi.at(i), M_->N);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  template <class T>
  std::vector<T> w_coords(const Cochain<T>& phi) const {
    check(phi, 1);
    if (phi.side != Side::conformal) throw DomainError("box_inverse: expected a conformal cochain");
    std::vector<T> flat = flatten(phi);
    std::vector<T> c(W_basis_.size(), T(0));
    for (std::size_t r = 0; r < c.size(); ++r)
      for (std::size_t k = 0; k < flat.size(); ++k)
        if (w_left_(r, k) != 0 && !is_zero_value(flat[k])) c[r] += flat[k] * T(w_left_(r, k));
    for (std::size_t k = 0; k < flat.size(); ++k) {
      T back(0);
      for (std::size_t r = 0; r < c.size(); ++r)
        if (w_flat_(k, r) != 0) back += c[r] * T(w_flat_(k, r));
      if (!is_zero_value(back - flat[k])) throw DomainError("cochain is not in im ∂* ∩ (g~/p~)*⊗g~_0");
    }
    return c;
  }

  void build_image();
  void build_components();

  const AlgModel* M_;
  std::array<std::vector<QMatrix>, 2> X_q_, Z_q_;
  std::array<std::vector<FMatrix>, 2> X_f_, Z_f_;
  std::array<std::vector<QVector>, 2> quotient_of_bracket_;  // coords of [Z_i, X_x] mod p
  std::array<QMatrix, 2> gram_inv_;

  std::vector<Cochain<Rational>> W_basis_;
  QMatrix w_flat_, w_left_, box_inv_W_;
  std::array<std::vector<Cochain<Rational>>, 3> comp_basis_;
  QMatrix comp_left_;

  std::vector<QMatrix> lambda2_fbar_0_;
  QMatrix lift_left_;
};

}  // namespace feff
