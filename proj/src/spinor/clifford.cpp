#include "feff/spinor/clifford.hpp"

namespace feff {

namespace {

int parity_below(unsigned mask, int i) { return __builtin_popcount(mask & ((1u << i) - 1)) & 1; }

template <class T>
Matrix<T> spin_impl(const ExteriorClifford& C, const Matrix<T>& X) {
  int k = C.k(), D = 2 * k, S = C.spinor_dim();
  if (static_cast<int>(X.rows()) != D || static_cast<int>(X.cols()) != D)
    throw DomainError("spin representation: size mismatch");
  // rho(X) = (sign/4) * sum_A gamma(X b_A) gamma(b^A); the dual of u_i is w_i and vice versa.
  Matrix<T> out(S, S);
  for (int A = 0; A < D; ++A) {
    int dual = A < k ? A + k : A - k;
    for (unsigned mask = 0; mask < static_cast<unsigned>(S); ++mask) {
      auto r1 = C.gamma_basis(dual, mask);
      if (!r1) continue;
      for (int j = 0; j < D; ++j) {
        const T& xj = X(j, A);
        if (is_zero(xj)) continue;
        auto r2 = C.gamma_basis(j, r1->first);
        if (!r2) continue;
        out(r2->first, mask) += xj * T(static_cast<long>(r1->second * r2->second));
      }
    }
  }
  T scale = T(Rational(C.sign(), 4));
  return out * scale;
}

}  // namespace

ExteriorClifford::ExteriorClifford(int k, int sign) : k_(k), sign_(sign) {
  if (k < 1 || k > 12) throw DomainError("clifford module: unsupported rank");
  if (sign != 1 && sign != -1) throw DomainError("clifford module: sign must be +1 or -1");
}

std::optional<std::pair<unsigned, int>> ExteriorClifford::gamma_basis(int j, unsigned mask) const {
  if (j < k_) {
    if (mask & (1u << j)) return std::nullopt;
    return std::pair{mask | (1u << j), parity_below(mask, j) ? -1 : 1};
  }
  int i = j - k_;
  if (!(mask & (1u << i))) return std::nullopt;
  int c = 2 * sign_ * (parity_below(mask, i) ? -1 : 1);
  return std::pair{mask & ~(1u << i), c};
}

QMatrix ExteriorClifford::gamma_matrix(int j) const {
  QMatrix G(spinor_dim(), spinor_dim());
  for (unsigned mask = 0; mask < static_cast<unsigned>(spinor_dim()); ++mask)
    if (auto r = gamma_basis(j, mask)) G(r->first, mask) = r->second;
  return G;
}

QMatrix ExteriorClifford::spin_matrix(const QMatrix& X) const { return spin_impl(*this, X); }
FMatrix ExteriorClifford::spin_matrix(const FMatrix& X) const { return spin_impl(*this, X); }

}  // namespace feff
