#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feff/confgeo/conformal.hpp"
#include "feff/kostant/kostant.hpp"
#include "feff/projgeo/projective.hpp"
#include "feff/spinor/spin_model.hpp"

namespace feff {

/// Chart x1..xn, p1..pn on T*M[2]\{0} over the patch of `ps`, valid where p_n != 0.
/// The section of G -> M~ is the Weyl gauge of `gauge` composed with
/// p(ξ) = blockdiag(1, B^{-t}), B = [e_1/ξ_n, e_2, ..., e_{n-1}, ξ], times an optional constant q ∈ Q.
struct CorrespondenceChart {
  ProjectiveStructure ps;
  ProjectiveStructure gauge;  // trace-free representative of ps
  const AlgModel* model = nullptr;
  FMatrix section;
};

/// Throws DomainError when ps is invalid, the model has the wrong n, or twist is not in Q.
CorrespondenceChart build_chart(const ProjectiveStructure& ps, const AlgModel& model,
                                const std::optional<QMatrix>& twist = std::nullopt);
/// a^{-1}(A^{-1})^t Y for p = [[a, *], [0, A]].
std::vector<RatFunc> fiber_action(const FMatrix& p, const std::vector<RatFunc>& Y);

enum class Stage { raw, step1, step2 };
std::string to_string(Stage s);

struct GaugedConnection {
  CorrespondenceChart chart;
  std::vector<FMatrix> omega;  // ω~(∂_A), A over x1..xn, p1..pn
  Stage stage = Stage::raw;
  Cochain<RatFunc> psi0, psi1;
};

GaugedConnection extend_connection(const CorrespondenceChart& chart, const Kostant& K);

/// S(i, A) = coordinate of ω~(∂_A) mod p~ along X^_i.
FMatrix soldering(const GaugedConnection& gc);
/// g_AB = h(ω~_A v+, ω~_B v+), with base point x = 0, p = e_n.
MetricPatch induced_metric(const GaugedConnection& gc);
/// K_AB = ∂_A ω~_B - ∂_B ω~_A + [ω~_A, ω~_B] at [A*m + B].
std::vector<FMatrix> curvature_form(const GaugedConnection& gc);
/// κ~(X^_i, X^_j).
Cochain<RatFunc> curvature_function(const GaugedConnection& gc, const std::vector<FMatrix>& K);

struct Defect {
  Cochain<RatFunc> value;  // ∂~*κ~
  Cochain<RatFunc> g0;     // its g~_0 part
  Cochain<RatFunc> g1;     // its p~_+ part
  bool vanishes = false;
  bool in_f_lambda2fbar = false;
  bool g0_in_f_lambda2f = false;
  /// 0 when zero, else the lowest homogeneity present (1 for g~_0 values, 2 for p~_+).
  int homogeneity = 0;
};
Defect normality_defect(const GaugedConnection& gc, const Kostant& K);

GaugedConnection normalize_step1(const GaugedConnection& gc, const Kostant& K);
GaugedConnection normalize_step2(const GaugedConnection& gc, const Kostant& K);

/// Q-subspaces e and f of g~/p~ in X^ coordinates (columns).
QMatrix e_directions(const AlgModel& M);
QMatrix f_directions(const AlgModel& M);
/// Frame X^_i -> null basis change T with T^t G T = [[0,I],[I,0]], G_ij = h(X^_i v+, X^_j v+), f mapped to span w.
QMatrix null_basis_change(const AlgModel& M);
/// Null frame S^{-1} T of the induced metric.
NullFrame adapted_frame(const GaugedConnection& gc, const MetricPatch& g);
/// The constant spinor, in the adapted frame, annihilated by the given X^-directions; throws if not a line.
SpinField pure_spinor_for(const AlgModel& M, const QMatrix& dirs);

struct TwistorCheck {
  SpinField chi;
  bool theta_zero = false;
  bool parallel = false;
  bool pure_with_kernel = false;
  std::string witness;
};
/// Metric route: Θ₀(χ), ∇L₀(χ) and purity for the spinor annihilated by `dirs`.
TwistorCheck twistor_check(const GaugedConnection& gc, const MetricPatch& g, const ConfCurvature& Kc,
                           const QMatrix& dirs);

/// Values of ω~ on the vertical directions ∂_{p_a}, and on p~ directions, kill the curvature.
bool vertical_insertions_vanish(const GaugedConnection& gc, const std::vector<FMatrix>& K);
bool curvature_in_g(const GaugedConnection& gc, const std::vector<FMatrix>& K);

/// A constant spinor s of Δ is parallel for d + spin(ω~).
bool spinor_parallel(const GaugedConnection& gc, const SpinModel& sm, const QVector& s);
/// ω~ preserves R^{n+1,n+1} = E ⊕ F.
bool preserves_splitting(const GaugedConnection& gc);

/// L₀(σ)·L₀(χ) for a density σ of weight 1 and the twistor spinor χ, both in the metric route.
SpinTractor<RatFunc> einstein_spin_product(const MetricPatch& g, const ConfCurvature& Kc, const NullFrame& nf,
                                           const RatFunc& sigma, const SpinField& chi);
bool is_zero(const SpinTractor<RatFunc>& s);

/// The adjoint tractor K in the gauge and its projection k, a vector field on the chart.
std::vector<RatFunc> k_field(const GaugedConnection& gc);
bool is_conformal_killing(const MetricPatch& g, const std::vector<RatFunc>& v);
/// Conformal Killing fields among polynomial vector fields of degree <= degree.
std::size_t conformal_killing_dim(const MetricPatch& g, int degree);
/// Infinitesimal projective automorphisms among polynomial vector fields of degree <= degree.
std::size_t projective_killing_dim(const ProjectiveStructure& ps, int degree);

/// Gauge-route standard tractor derivative (d + ω~) on R^{n+1,n+1}-valued functions, and the
/// splitting v ↦ (h(v,v-), φ_a, h(v,v+)) into the metric slots.
std::vector<std::vector<RatFunc>> gauge_tractor_derivative(const GaugedConnection& gc, const std::vector<RatFunc>& v);
ConfTractor gauge_to_metric_slots(const GaugedConnection& gc, const MetricPatch& g, const std::vector<RatFunc>& v);

}  // namespace feff
