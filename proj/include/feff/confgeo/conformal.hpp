#pragma once

#include <cstdint>
#include <vector>

#include "feff/spinor/tractor_clifford.hpp"
#include "feff/symcore/ratfunc.hpp"
#include "feff/symcore/variables.hpp"

namespace feff {

/// Metric of signature (n,n) on a patch of R^{2n} in coordinates x1..xn, p1..pn
/// (coordinate index a < n is x_{a+1}, a >= n is p_{a-n+1}).
struct MetricPatch {
  int n = 0;
  FMatrix g;
  /// Point where the signature is checked; all zeros when empty.
  std::vector<Rational> base;

  int m() const { return 2 * n; }
  VarId coord(int a) const { return a < n ? x_var(a + 1) : p_var(a - n + 1); }
  /// g = 2 dx^a ⊙ dp_a.
  static MetricPatch flat(int n);
  /// Throws DomainError on wrong size, odd dimension, asymmetry, foreign variables,
  /// degenerate determinant or wrong signature at the base point.
  void validate() const;
  std::uint64_t gauge() const;
  /// Ω^2 g.
  MetricPatch rescaled(const RatFunc& omega) const;
  std::vector<Rational> point() const;
};

/// Counts of (positive, negative, zero) directions of a symmetric rational matrix.
struct Inertia {
  int pos = 0, neg = 0, zero = 0;
};
Inertia inertia(const QMatrix& s);

/// Γ^a_{bc} at Gam[(a*m+b)*m+c]; R_{ab}{}^c{}_d with [D_a,D_b]ξ^c = R_{ab}{}^c{}_d ξ^d at
/// R[((a*m+b)*m+c)*m+d], C likewise; Ric_{bd} = R_{ab}{}^a{}_d; Y_{abc} = D_aP_{bc} - D_bP_{ac}.
struct ConfCurvature {
  int m = 0;
  FMatrix ginv;
  std::vector<RatFunc> Gam, R, Ric, P, C, Y;
  RatFunc Sc, J;
  const RatFunc& gam(int a, int b, int c) const { return Gam[(a * m + b) * m + c]; }
  const RatFunc& r(int a, int b, int c, int d) const { return R[((a * m + b) * m + c) * m + d]; }
  const RatFunc& weyl(int a, int b, int c, int d) const { return C[((a * m + b) * m + c) * m + d]; }
  const RatFunc& ric(int a, int b) const { return Ric[a * m + b]; }
  const RatFunc& p(int a, int b) const { return P[a * m + b]; }
  const RatFunc& cotton(int a, int b, int c) const { return Y[(a * m + b) * m + c]; }
};

ConfCurvature conf_curvature(const MetricPatch& mp);

/// Standard tractor (rho, phi_a, sigma) in the scale g.
struct ConfTractor {
  RatFunc rho;
  std::vector<RatFunc> phi;
  RatFunc sigma;
  std::uint64_t gauge = 0;
};

/// ∇_c t for c = 0..m-1.
std::vector<ConfTractor> std_tractor_derivative(const MetricPatch& mp, const ConfCurvature& K, const ConfTractor& t);
RatFunc std_tractor_metric(const ConfCurvature& K, const ConfTractor& a, const ConfTractor& b);

struct EinsteinBgg {
  ConfTractor split;
  /// Trace-free part of D_aD_bσ + P_abσ at [a*m+b].
  std::vector<RatFunc> theta;
};
EinsteinBgg einstein_bgg(const MetricPatch& mp, const ConfCurvature& K, const RatFunc& sigma);
std::size_t einstein_kernel_dim(const MetricPatch& mp, int degree);

/// Frame u_1..u_n, w_1..w_n as the columns of F (coordinate components), with
/// g(u_i,w_j) = δ_ij and u, w isotropic. Spinors live in Λ•R^n: u_i acts by wedge,
/// w_i by -2 times contraction.
struct NullFrame {
  int n = 0;
  FMatrix F;
  FMatrix Finv;

  /// Throws DomainError if F is singular or fails the pairing normalization against mp.
  static NullFrame from_matrix(const MetricPatch& mp, FMatrix F);
  /// Frame with w_i = ∂_{p_i}; needs the p-p block of g to vanish and the x-p block to be invertible.
  static NullFrame vertical(const MetricPatch& mp);
  /// Frame components of the vector with coordinate components v.
  std::vector<RatFunc> to_frame(const std::vector<RatFunc>& v) const;
  /// Clifford matrix of ∂_c.
  FMatrix gamma(int c) const;
};

using SpinField = std::vector<RatFunc>;

/// Spinor covariant derivative D_cχ.
std::vector<SpinField> spinor_derivative(const MetricPatch& mp, const ConfCurvature& K, const NullFrame& nf,
                                         const SpinField& chi);
std::vector<SpinTractor<RatFunc>> spin_tractor_derivative(const MetricPatch& mp, const ConfCurvature& K,
                                                          const NullFrame& nf, const SpinTractor<RatFunc>& s);
/// Standard tractor in frame components, for use with tractor_clifford.
StdTractor<RatFunc> to_frame(const ConfCurvature& K, const NullFrame& nf, const ConfTractor& t);

struct TwistorResult {
  std::vector<SpinField> theta;
  SpinField dirac;
  SpinTractor<RatFunc> split;
};
/// Throws DomainError when χ mixes even and odd forms.
TwistorResult twistor_operator(const MetricPatch& mp, const ConfCurvature& K, const NullFrame& nf, const SpinField& chi);
/// Dimension of the twistor spinors among polynomial spinor fields of degree <= degree.
std::size_t twistor_kernel_dim(const MetricPatch& mp, const NullFrame& nf, int degree);

}  // namespace feff
