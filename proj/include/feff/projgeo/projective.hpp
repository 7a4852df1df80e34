#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feff/kostant/kostant.hpp"
#include "feff/symcore/ratfunc.hpp"
#include "feff/symcore/variables.hpp"

namespace feff {

/// Torsion-free affine connection D on a patch of R^n in coordinates x1..xn.
/// Γ^a_{bc} is stored at gamma[(a*n + b)*n + c] with 0-based indices.
struct ProjectiveStructure {
  int n = 0;
  std::vector<RatFunc> gamma;

  static ProjectiveStructure flat(int n);
  RatFunc& G(int a, int b, int c) { return gamma[(a * n + b) * n + c]; }
  const RatFunc& G(int a, int b, int c) const { return gamma[(a * n + b) * n + c]; }
  /// Γ^p_{cp}
  RatFunc trace(int c) const;
  VarId x(int c) const { return x_var(c + 1); }
  /// Throws DomainError on bad size, n out of range or Γ not symmetric in the lower indices.
  void validate() const;
  /// Fingerprint identifying the gauge D.
  std::uint64_t gauge() const;
};

/// R_{c1c2}{}^a{}_p at R[((c1*n + c2)*n + a)*n + p], with [D_c1, D_c2]ξ^a = R_{c1c2}{}^a{}_p ξ^p;
/// P_{ab} at P[a*n + b]; C like R; A_{a c1 c2} at A[(a*n + c1)*n + c2].
struct ProjCurvature {
  int n = 0;
  std::vector<RatFunc> R, P, C, A;
  const RatFunc& r(int c1, int c2, int a, int p) const { return R[((c1 * n + c2) * n + a) * n + p]; }
  const RatFunc& p(int a, int b) const { return P[a * n + b]; }
  const RatFunc& c(int c1, int c2, int a, int p) const { return C[((c1 * n + c2) * n + a) * n + p]; }
  const RatFunc& cotton(int a, int c1, int c2) const { return A[(a * n + c1) * n + c2]; }
  /// Ricci contraction R_{p b}{}^p{}_d.
  RatFunc ricci(int b, int d) const;
};

/// P_{ab} = Ric_(ab)/(n-1) + Ric_[ab]/(n+1); C = R + P_{c1p}δ^a_{c2} - P_{c2p}δ^a_{c1} + 2P_[c1c2]δ^a_p;
/// A_{ac1c2} = D_c1 P_{c2a} - D_c2 P_{c1a}. Throws DomainError for n < 2.
ProjCurvature proj_curvature(const ProjectiveStructure& ps);

/// Γ^b_{ac} + Υ_a δ^b_c + Υ_c δ^b_a.
ProjectiveStructure proj_change(const ProjectiveStructure& ps, const std::vector<RatFunc>& upsilon);
/// The connection in [D] with Γ^p_{cp} = 0, reached with Υ_c = -Γ^p_{cp}/(n+1).
ProjectiveStructure trace_free_representative(const ProjectiveStructure& ps);

/// D_c of a density of weight w, trivialized by the coordinate volume form.
RatFunc density_derivative(const ProjectiveStructure& ps, const RatFunc& f, int w, int c);

enum class ProjBundle { T, Tstar };

/// T: (rho in E[-1], sigma^a in E^a[-1]).  T*: (phi_a in E_a[1], sigma in E[1]).
/// `scalar` holds rho for T and sigma for T*; `vec` holds sigma^a for T and phi_a for T*.
struct ProjTractor {
  ProjBundle bundle = ProjBundle::T;
  RatFunc scalar;
  std::vector<RatFunc> vec;
  std::uint64_t gauge = 0;
};

/// ∇_c t for c = 0..n-1. Throws DomainError on gauge mismatch.
std::vector<ProjTractor> tractor_derivative(const ProjectiveStructure& ps, const ProjTractor& t);
/// ⟨t*, t⟩ = phi_a sigma^a + sigma rho.
RatFunc tractor_pairing(const ProjTractor& dual, const ProjTractor& t);

ProjTractor splitting_T(const ProjectiveStructure& ps, const std::vector<RatFunc>& sigma);
ProjTractor splitting_Tstar(const ProjectiveStructure& ps, const RatFunc& sigma);
/// Θ_0^T(σ)_c^a at [c*n + a].
std::vector<RatFunc> bgg_T(const ProjectiveStructure& ps, const std::vector<RatFunc>& sigma);
/// Θ_0^{T*}(σ)_{ab} at [a*n + b].
std::vector<RatFunc> bgg_Tstar(const ProjectiveStructure& ps, const RatFunc& sigma);
/// Dimension of the solution space of Θ_0 = 0 among polynomial sections of degree <= degree.
std::size_t bgg_kernel_dim(const ProjectiveStructure& ps, ProjBundle bundle, int degree);

/// Normal projective Cartan connection in the Weyl gauge of D: ω_c ∈ sl(n+1) acting on
/// (rho, sigma^1..sigma^n) so that ∇^T = d + ω, and its curvature on the frame X_i.
struct ProjCartan {
  std::vector<FMatrix> omega;
  Cochain<RatFunc> kappa;
};
ProjCartan cartan_gauge(const ProjectiveStructure& ps, const Kostant& K);

}  // namespace feff
