#pragma once

#include <vector>

#include "feff/liealg/model.hpp"
#include "feff/spinor/clifford.hpp"

namespace feff {

enum class Parity { plus, minus, mixed, zero };

/// Spin representation Δ = Λ•E of so(n+1,n+1). The Clifford module uses the
/// anticommutator 2h(v,w); vectors are given in the basis e_0..e_n, f_0..f_n of the model.
/// Δ_- is the even-degree part (it contains the vacuum s_F).
struct SpinModel {
  const AlgModel* alg = nullptr;
  ExteriorClifford cl;
  int dim_delta = 0;
  QVector s_E;  // top wedge
  QVector s_F;  // vacuum
  QMatrix K_spin;

  explicit SpinModel(const AlgModel& model);

  QVector clifford_act(const QVector& v, const QVector& s) const { return cl.act(v, s); }
  FMatrix clifford_matrix(const std::vector<RatFunc>& v) const;
  QMatrix spin(const QMatrix& X) const { return cl.spin_matrix(X); }
  FMatrix spin(const FMatrix& X) const { return cl.spin_matrix(X); }

  Parity parity(const QVector& s) const;
  /// Basis (as columns) of {v : v·s = 0}; throws DomainError on the zero spinor and on mixed parity.
  QMatrix purity_kernel(const QVector& s) const;
  bool is_pure(const QVector& s) const;
  /// Top-degree component of reverse(s) ∧ t.
  Rational pairing(const QVector& s, const QVector& t) const;
};

}  // namespace feff
