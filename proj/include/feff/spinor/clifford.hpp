#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "feff/errors.hpp"
#include "feff/spinor/qsqrt2.hpp"
#include "feff/symcore/matrix.hpp"

namespace feff {

/// Clifford module Λ•(R^k) for R^{k,k} with null basis u_0..u_{k-1}, w_0..w_{k-1},
/// h(u_i, w_j) = delta_ij. u_i acts by wedge, w_i by (2*sign) times contraction, so that
///   v·w·s + w·v·s = 2*sign*h(v,w) s.
/// Spinor basis index = bitmask of the wedge factors present.
class ExteriorClifford {
 public:
  ExteriorClifford(int k, int sign);

  int k() const { return k_; }
  int sign() const { return sign_; }
  int vector_dim() const { return 2 * k_; }
  int spinor_dim() const { return 1 << k_; }

  /// Image of basis spinor `mask` under basis vector j: (target mask, coefficient) or nothing.
  std::optional<std::pair<unsigned, int>> gamma_basis(int j, unsigned mask) const;

  /// Dense matrix of Clifford multiplication by basis vector j.
  QMatrix gamma_matrix(int j) const;

  template <class S, class V>
  std::vector<S> act(const std::vector<V>& v, const std::vector<S>& s) const {
    if (static_cast<int>(v.size()) != vector_dim() || static_cast<int>(s.size()) != spinor_dim())
      throw DomainError("clifford action: size mismatch");
    std::vector<S> out(s.size(), S(0));
    for (int j = 0; j < vector_dim(); ++j) {
      if (is_zero(v[j])) continue;
      for (unsigned mask = 0; mask < s.size(); ++mask) {
        if (is_zero(s[mask])) continue;
        auto r = gamma_basis(j, mask);
        if (!r) continue;
        out[r->first] += S(v[j]) * s[mask] * S(static_cast<long>(r->second));
      }
    }
    return out;
  }

  /// Bilinear form on vectors in the null basis.
  template <class V>
  V h(const std::vector<V>& a, const std::vector<V>& b) const {
    V s(0);
    for (int i = 0; i < k_; ++i) s += a[i] * b[k_ + i] + a[k_ + i] * b[i];
    return s;
  }

  /// Spin representation of an h-skew endomorphism (matrix in the null basis).
  QMatrix spin_matrix(const QMatrix& X) const;
  FMatrix spin_matrix(const FMatrix& X) const;

  static int degree(unsigned mask) { return __builtin_popcount(mask); }

 private:
  int k_;
  int sign_;
};

}  // namespace feff
