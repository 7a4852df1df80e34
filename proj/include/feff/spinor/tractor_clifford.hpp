#pragma once

#include <cstdint>
#include <vector>

#include "feff/spinor/clifford.hpp"

namespace feff {

/// Standard tractor (rho, phi, sigma) in a metric gauge; phi holds the components of the
/// tangent vector in the null frame u_1..u_n, w_1..w_n.
template <class T>
struct StdTractor {
  T rho{0};
  std::vector<T> phi;
  T sigma{0};
  std::uint64_t gauge = 0;
};

/// Spin tractor (tau, chi): tau is the top slot, chi the projecting slot.
template <class T>
struct SpinTractor {
  std::vector<QSqrt2<T>> tau;
  std::vector<QSqrt2<T>> chi;
  std::uint64_t gauge = 0;
};

/// Tangent Clifford module S = Λ•R^n with v·v = -g(v,v).
inline ExteriorClifford tangent_clifford(int n) { return ExteriorClifford(n, -1); }

template <class T>
T tractor_metric(const ExteriorClifford& tangent, const StdTractor<T>& a, const StdTractor<T>& b) {
  return a.rho * b.sigma + a.sigma * b.rho + tangent.h(a.phi, b.phi);
}

/// (rho, phi, sigma)·(tau, chi) = (-phi·tau + sqrt2 rho chi, phi·chi - sqrt2 sigma tau).
template <class T>
SpinTractor<T> tractor_clifford(const ExteriorClifford& tangent, const StdTractor<T>& t, const SpinTractor<T>& s) {
  if (t.gauge != s.gauge) throw DomainError("tractor_clifford: gauge mismatch");
  using Q = QSqrt2<T>;
  std::vector<Q> phi(t.phi.begin(), t.phi.end());
  auto phi_tau = tangent.act(phi, s.tau);
  auto phi_chi = tangent.act(phi, s.chi);
  Q r2 = Q::sqrt2();
  SpinTractor<T> out;
  out.gauge = t.gauge;
  out.tau.resize(s.tau.size());
  out.chi.resize(s.chi.size());
  for (std::size_t i = 0; i < s.tau.size(); ++i) {
    out.tau[i] = -phi_tau[i] + r2 * Q(t.rho) * s.chi[i];
    out.chi[i] = phi_chi[i] - r2 * Q(t.sigma) * s.tau[i];
  }
  return out;
}

}  // namespace feff
