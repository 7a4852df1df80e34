#include "feff/spinor/spin_model.hpp"

namespace feff {

SpinModel::SpinModel(const AlgModel& model) : alg(&model), cl(model.N, 1), dim_delta(1 << model.N) {
  s_E.assign(dim_delta, Rational(0));
  s_F.assign(dim_delta, Rational(0));
  s_E[dim_delta - 1] = 1;
  s_F[0] = 1;
  K_spin = cl.spin_matrix(model.K);
}

FMatrix SpinModel::clifford_matrix(const std::vector<RatFunc>& v) const {
  FMatrix M(dim_delta, dim_delta);
  for (int j = 0; j < cl.vector_dim(); ++j) {
    if (v[j].is_zero()) continue;
    for (unsigned mask = 0; mask < static_cast<unsigned>(dim_delta); ++mask)
      if (auto r = cl.gamma_basis(j, mask)) M(r->first, mask) += v[j] * RatFunc(r->second);
  }
  return M;
}

Parity SpinModel::parity(const QVector& s) const {
  bool even = false, odd = false;
  for (unsigned mask = 0; mask < s.size(); ++mask)
    if (s[mask] != 0) (ExteriorClifford::degree(mask) % 2 ? odd : even) = true;
  if (even && odd) return Parity::mixed;
  if (even) return Parity::minus;
  if (odd) return Parity::plus;
  return Parity::zero;
}

QMatrix SpinModel::purity_kernel(const QVector& s) const {
  if (static_cast<int>(s.size()) != dim_delta) throw DomainError("purity_kernel: size mismatch");
  Parity p = parity(s);
  if (p == Parity::zero) throw DomainError("purity_kernel: zero spinor");
  if (p == Parity::mixed) throw DomainError("purity_kernel: spinor of mixed parity");
  int D = cl.vector_dim();
  QMatrix A(dim_delta, D);
  for (int j = 0; j < D; ++j) {
    QVector e(D, Rational(0));
    e[j] = 1;
    QVector img = cl.act(e, s);
    for (int r = 0; r < dim_delta; ++r) A(r, j) = img[r];
  }
  return A.nullspace();
}

bool SpinModel::is_pure(const QVector& s) const {
  return static_cast<int>(purity_kernel(s).cols()) == cl.k();
}

Rational SpinModel::pairing(const QVector& s, const QVector& t) const {
  unsigned top = static_cast<unsigned>(dim_delta - 1);
  Rational sum = 0;
  for (unsigned a = 0; a < s.size(); ++a) {
    if (s[a] == 0) continue;
    unsigned b = top & ~a;
    if (t[b] == 0) continue;
    int k = ExteriorClifford::degree(a);
    int sign = (k * (k - 1) / 2) % 2 ? -1 : 1;
    // e_a ∧ e_b reordered to the top monomial: count pairs (i in a, j in b) with i > j
    int inv = 0;
    for (int i = 0; i < cl.k(); ++i)
      if (a & (1u << i)) inv += __builtin_popcount(b & ((1u << i) - 1));
    if (inv % 2) sign = -sign;
    sum += s[a] * t[b] * sign;
  }
  return sum;
}

}  // namespace feff
