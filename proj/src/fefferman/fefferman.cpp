#include "feff/fefferman/fefferman.hpp"

#include <algorithm>
#include <string>

#include "feff/symcore/linear.hpp"

namespace feff {

namespace {

RatFunc q(long a, long b = 1) { return RatFunc(Rational(a, b)); }

FMatrix d(const FMatrix& A, VarId v) { return A.map([v](const RatFunc& f) { return f.derivative(v); }); }

VarId coord(int n, int A) { return A < n ? x_var(A + 1) : p_var(A - n + 1); }

RatFunc killing_so(const AlgModel& M, const FMatrix& X, const QMatrix& Y) {
  RatFunc s;
  for (int i = 0; i < M.D; ++i)
    for (int j = 0; j < M.D; ++j)
      if (Y(j, i) != 0 && !X(i, j).is_zero()) s += X(i, j) * RatFunc(Y(j, i));
  return s * RatFunc(M.killing_so);
}

FMatrix graded(const AlgModel& M, const FMatrix& X, int j) {
  FMatrix E = lift(M.grading_so);
  FMatrix a1 = bracket(E, X), a2 = bracket(E, a1);
  switch (j) {
    case 1: return (a2 + a1) * q(1, 2);
    case -1: return (a2 - a1) * q(1, 2);
    default: return X - a2;
  }
}

// Coordinates of so-valued matrices in a fixed rational basis.
class SpanCoords {
 public:
  SpanCoords(const std::vector<QMatrix>& basis, int N) : basis_(basis), N_(N) {
    if (basis.empty()) return;
    auto first = skew_coords(basis[0], N);
    QMatrix B(first.size(), basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
      auto c = skew_coords(basis[r], N);
      for (std::size_t k = 0; k < c.size(); ++k) B(k, r) = c[k];
    }
    QMatrix Bt = B.transpose();
    left_ = (Bt * B).inverse() * Bt;
  }
  std::optional<std::vector<RatFunc>> coords(const FMatrix& X) const {
    std::vector<RatFunc> c(basis_.size());
    if (X.is_zero()) return c;
    if (basis_.empty()) return std::nullopt;
    auto flat = skew_coords(X, N_);
    for (std::size_t r = 0; r < basis_.size(); ++r)
      for (std::size_t k = 0; k < flat.size(); ++k)
        if (left_(r, k) != 0 && !flat[k].is_zero()) c[r] += flat[k] * RatFunc(left_(r, k));
    if (!(combine(c) == X)) return std::nullopt;
    return c;
  }
  FMatrix combine(const std::vector<RatFunc>& c) const {
    const std::size_t D = basis_.empty() ? 0 : basis_[0].rows();
    FMatrix out(D, D);
    for (std::size_t r = 0; r < c.size(); ++r)
      if (!c[r].is_zero()) out += lift(basis_[r]) * c[r];
    return out;
  }

 private:
  std::vector<QMatrix> basis_;
  int N_;
  QMatrix left_;
};

QMatrix sub_block(const QMatrix& A, int r0, int c0, int k) {
  QMatrix B(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) B(i, j) = A(r0 + i, c0 + j);
  return B;
}

QMatrix quotient_gram(const AlgModel& M) {
  QMatrix G(M.m, M.m);
  for (int i = 0; i < M.m; ++i)
    for (int j = 0; j < M.m; ++j) {
      QVector a = M.X_hat[i] * M.v_plus_tilde, b = M.X_hat[j] * M.v_plus_tilde;
      Rational s = 0;
      for (int k = 0; k < M.D; ++k)
        for (int l = 0; l < M.D; ++l) s += a[k] * M.h(k, l) * b[l];
      G(i, j) = s;
    }
  return G;
}

// Inverse of S with one gcd-reduced determinant.
FMatrix inverse_checked(const FMatrix& S, const char* what) {
  if (S.determinant().is_zero()) throw DomainError(std::string(what) + ": soldering form is degenerate on the whole chart");
  return S.inverse();
}

}  // namespace

std::string to_string(Stage s) {
  switch (s) {
    case Stage::raw: return "raw";
    case Stage::step1: return "step1";
    case Stage::step2: return "step2";
  }
  return "?";
}

std::vector<RatFunc> fiber_action(const FMatrix& p, const std::vector<RatFunc>& Y) {
  const std::size_t n = p.rows() - 1;
  FMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = p(i + 1, j + 1);
  auto out = A.inverse().transpose() * Y;
  RatFunc ainv = RatFunc(1) / p(0, 0);
  for (auto& x : out) x *= ainv;
  return out;
}

CorrespondenceChart build_chart(const ProjectiveStructure& ps, const AlgModel& model, const std::optional<QMatrix>& twist) {
  ps.validate();
  const int n = ps.n, N = n + 1;
  if (model.n != n) throw DomainError("build_chart: algebra model of the wrong dimension");
  CorrespondenceChart ch;
  ch.ps = ps;
  ch.gauge = trace_free_representative(ps);
  ch.model = &model;
  RatFunc xin = RatFunc(Poly::var(p_var(n)));
  FMatrix B = FMatrix::identity(n);
  B(0, 0) = RatFunc(1) / xin;
  for (int a = 0; a < n; ++a) B(a, n - 1) = RatFunc(Poly::var(p_var(a + 1)));
  FMatrix A = B.inverse().transpose();
  FMatrix p(N, N);
  p(0, 0) = RatFunc(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i + 1, j + 1) = A(i, j);
  if (twist) {
    const QMatrix& t = *twist;
    if (t.rows() != static_cast<std::size_t>(N) || t.cols() != static_cast<std::size_t>(N))
      throw DomainError("build_chart: twist has the wrong size");
    if (t(0, 0) <= 0 || t.determinant() != 1) throw DomainError("build_chart: twist is not in Q");
    for (int i = 1; i < N; ++i)
      if (t(i, 0) != 0) throw DomainError("build_chart: twist is not in Q");
    for (int j = 0; j < n; ++j)
      if (t(n, j) != 0) throw DomainError("build_chart: twist is not in Q");
    if (t(n, n) * t(0, 0) != 1) throw DomainError("build_chart: twist is not in Q");
    p = p * lift(t);
  }
  ch.section = std::move(p);
  return ch;
}

GaugedConnection extend_connection(const CorrespondenceChart& chart, const Kostant& K) {
  const AlgModel& M = *chart.model;
  const int n = M.n;
  ProjCartan pc = cartan_gauge(chart.gauge, K);
  FMatrix pinv = chart.section.inverse();
  GaugedConnection gc;
  gc.chart = chart;
  auto include = [&](const FMatrix& X) {
    FMatrix out(M.D, M.D);
    for (int i = 0; i < M.N; ++i)
      for (int j = 0; j < M.N; ++j) {
        out(i, j) = X(i, j);
        out(M.N + i, M.N + j) = -X(j, i);
      }
    return out;
  };
  for (int c = 0; c < n; ++c) gc.omega.push_back(include(pinv * pc.omega[c] * chart.section));
  for (int a = 0; a < n; ++a) gc.omega.push_back(include(pinv * d(chart.section, p_var(a + 1))));
  return gc;
}

FMatrix soldering(const GaugedConnection& gc) {
  const AlgModel& M = *gc.chart.model;
  FMatrix S(M.m, M.m);
  for (int A = 0; A < M.m; ++A)
    for (int i = 0; i < M.m; ++i) S(i, A) = killing_so(M, gc.omega[A], M.Z_tilde[i]);
  return S;
}

MetricPatch induced_metric(const GaugedConnection& gc) {
  const AlgModel& M = *gc.chart.model;
  FMatrix S = soldering(gc);
  FMatrix G = lift(quotient_gram(M));
  MetricPatch mp;
  mp.n = M.n;
  mp.g = S.transpose() * G * S;
  mp.base.assign(M.m, Rational(0));
  mp.base[M.m - 1] = 1;
  mp.validate();
  return mp;
}

std::vector<FMatrix> curvature_form(const GaugedConnection& gc) {
  const int m = gc.chart.model->m, n = gc.chart.model->n;
  std::vector<FMatrix> K(m * m, FMatrix(gc.chart.model->D, gc.chart.model->D));
  for (int A = 0; A < m; ++A)
    for (int B = A + 1; B < m; ++B) {
      FMatrix v = d(gc.omega[B], coord(n, A)) - d(gc.omega[A], coord(n, B)) + bracket(gc.omega[A], gc.omega[B]);
      K[B * m + A] = v * q(-1);
      K[A * m + B] = std::move(v);
    }
  return K;
}

Cochain<RatFunc> curvature_function(const GaugedConnection& gc, const std::vector<FMatrix>& K) {
  const AlgModel& M = *gc.chart.model;
  const int m = M.m;
  FMatrix Si = inverse_checked(soldering(gc), "curvature_function");
  Cochain<RatFunc> out;
  out.arity = 2;
  out.side = Side::conformal;
  out.dim = m;
  out.v.assign(m * m, FMatrix(M.D, M.D));
  // half-contracted: H(A, j) = Σ_B K_AB Si(B, j)
  std::vector<FMatrix> H(m * m, FMatrix(M.D, M.D));
  for (int A = 0; A < m; ++A)
    for (int j = 0; j < m; ++j)
      for (int B = 0; B < m; ++B)
        if (!Si(B, j).is_zero() && !K[A * m + B].is_zero()) H[A * m + j] += K[A * m + B] * Si(B, j);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      FMatrix v(M.D, M.D);
      for (int A = 0; A < m; ++A)
        if (!Si(A, i).is_zero() && !H[A * m + j].is_zero()) v += H[A * m + j] * Si(A, i);
      out.at(j, i) = v * q(-1);
      out.at(i, j) = std::move(v);
    }
  return out;
}

Defect normality_defect(const GaugedConnection& gc, const Kostant& K) {
  const AlgModel& M = *gc.chart.model;
  Defect df;
  df.value = K.codifferential(curvature_function(gc, curvature_form(gc)));
  df.g0 = K.zero<RatFunc>(Side::conformal, 1);
  df.g1 = K.zero<RatFunc>(Side::conformal, 1);
  for (int i = 0; i < M.m; ++i) {
    df.g0.at(i) = graded(M, df.value.at(i), 0);
    df.g1.at(i) = graded(M, df.value.at(i), 1);
    if (!graded(M, df.value.at(i), -1).is_zero()) throw ConsistencyError("normality_defect: codifferential left p~");
  }
  df.vanishes = df.value.is_zero();
  df.homogeneity = !df.g0.is_zero() ? 1 : !df.g1.is_zero() ? 2 : 0;
  QMatrix fdirs = f_directions(M);
  SpanCoords fbar(M.lambda2_fbar, M.N);
  std::vector<QMatrix> l2f0;
  for (const auto& x : M.lambda2_fbar) l2f0.push_back(M.graded_part(x, 0));
  SpanCoords l2f(l2f0, M.N);
  // vanishing on f: Σ_i c_i value(i) = 0 for every column c of fdirs
  auto kills_f = [&](const Cochain<RatFunc>& phi) {
    for (std::size_t col = 0; col < fdirs.cols(); ++col) {
      FMatrix s(M.D, M.D);
      for (int i = 0; i < M.m; ++i)
        if (fdirs(i, col) != 0) s += phi.at(i) * RatFunc(fdirs(i, col));
      if (!s.is_zero()) return false;
    }
    return true;
  };
  df.in_f_lambda2fbar = kills_f(df.value);
  df.g0_in_f_lambda2f = kills_f(df.g0);
  for (int i = 0; i < M.m; ++i) {
    if (!fbar.coords(df.value.at(i))) df.in_f_lambda2fbar = false;
    if (!l2f.coords(df.g0.at(i))) df.g0_in_f_lambda2f = false;
  }
  return df;
}

namespace {

void add_cochain_as_form(GaugedConnection& gc, const Cochain<RatFunc>& psi) {
  FMatrix S = soldering(gc);
  const int m = gc.chart.model->m;
  for (int A = 0; A < m; ++A)
    for (int i = 0; i < m; ++i)
      if (!S(i, A).is_zero() && !psi.at(i).is_zero()) gc.omega[A] += psi.at(i) * S(i, A);
}

}  // namespace

GaugedConnection normalize_step1(const GaugedConnection& gc, const Kostant& K) {
  if (gc.stage != Stage::raw) throw DomainError("normalize_step1: connection is not at stage raw");
  Defect df = normality_defect(gc, K);
  Cochain<RatFunc> target;
  try {
    target = K.box_inverse(df.g0) * q(-1);
  } catch (const DomainError&) {
    throw ConsistencyError("normalize_step1: g~_0 part of the defect is outside im ∂*");
  }
  GaugedConnection out = gc;
  out.psi0 = K.lift_to_fbar(target);
  out.psi1 = K.zero<RatFunc>(Side::conformal, 1);
  add_cochain_as_form(out, out.psi0);
  out.stage = Stage::step1;
  return out;
}

GaugedConnection normalize_step2(const GaugedConnection& gc, const Kostant& K) {
  if (gc.stage != Stage::step1) throw DomainError("normalize_step2: connection is not at stage step1");
  const AlgModel& M = *gc.chart.model;
  Defect df = normality_defect(gc, K);
  if (df.homogeneity == 1) throw ConsistencyError("normalize_step2: g~_0 part of the defect survived step 1");
  SpanCoords g1(M.gt_plus, M.N);
  const int m = M.m, r = static_cast<int>(M.gt_plus.size()), dim = m * r;
  // □ on (g~/p~)*⊗g~_1 in the basis (i, k) -> i*r + k
  QMatrix box(dim, dim);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < r; ++k) {
      Cochain<Rational> e = K.zero<Rational>(Side::conformal, 1);
      e.at(i) = M.gt_plus[k];
      Cochain<Rational> b = K.laplacian(e);
      for (int j = 0; j < m; ++j) {
        auto c = g1.coords(lift(b.at(j)));
        if (!c) throw ConsistencyError("normalize_step2: □ left (g~/p~)*⊗g~_1");
        for (int l = 0; l < r; ++l) box(j * r + l, i * r + k) = (*c)[l].evaluate(std::vector<Rational>(kMaxVars));
      }
    }
  // im □ has a basis of columns; solve □ Ψ = -defect inside it
  auto piv = [&] {
    QMatrix t = box;
    return t.rref_in_place();
  }();
  QMatrix Im(dim, piv.size()), Aim(dim, piv.size());
  {
    QMatrix bt = box.transpose();
    QMatrix rr = bt;
    auto rows = rr.rref_in_place();
    for (std::size_t c = 0; c < rows.size(); ++c)
      for (int k = 0; k < dim; ++k) Im(k, c) = rr(c, k);
  }
  Aim = box * Im;
  QMatrix At = Aim.transpose();
  QMatrix left = (At * Aim).inverse() * At;
  std::vector<RatFunc> rhs(dim);
  for (int i = 0; i < m; ++i) {
    auto c = g1.coords(df.g1.at(i));
    if (!c) throw ConsistencyError("normalize_step2: defect is not p~_+-valued");
    for (int l = 0; l < r; ++l) rhs[i * r + l] = -(*c)[l];
  }
  std::vector<RatFunc> z(Im.cols()), y(dim);
  for (std::size_t a = 0; a < Im.cols(); ++a)
    for (int k = 0; k < dim; ++k)
      if (left(a, k) != 0 && !rhs[k].is_zero()) z[a] += rhs[k] * RatFunc(left(a, k));
  for (int k = 0; k < dim; ++k)
    for (std::size_t a = 0; a < Im.cols(); ++a)
      if (Im(k, a) != 0 && !z[a].is_zero()) y[k] += z[a] * RatFunc(Im(k, a));
  for (int k = 0; k < dim; ++k) {
    RatFunc s;
    for (int l = 0; l < dim; ++l)
      if (box(k, l) != 0 && !y[l].is_zero()) s += y[l] * RatFunc(box(k, l));
    if (!(s == rhs[k])) throw ConsistencyError("normalize_step2: residual defect is not in the image of □");
  }
  GaugedConnection out = gc;
  out.psi1 = K.zero<RatFunc>(Side::conformal, 1);
  for (int i = 0; i < m; ++i) out.psi1.at(i) = g1.combine(std::vector<RatFunc>(y.begin() + i * r, y.begin() + (i + 1) * r));
  add_cochain_as_form(out, out.psi1);
  out.stage = Stage::step2;
  return out;
}

QMatrix f_directions(const AlgModel& M) {
  // X^ v+ has E-part proportional to e_0
  QMatrix C(M.n, M.m);
  for (int i = 0; i < M.m; ++i) {
    QVector w = M.X_hat[i] * M.v_plus_tilde;
    for (int j = 1; j < M.N; ++j) C(j - 1, i) = w[j];
  }
  return C.nullspace();
}

QMatrix e_directions(const AlgModel& M) {
  QMatrix C(M.n, M.m);
  for (int i = 0; i < M.m; ++i) {
    QVector w = M.X_hat[i] * M.v_plus_tilde;
    for (int j = 0; j < M.n; ++j) C(j, i) = w[M.N + j];
  }
  return C.nullspace();
}

QMatrix null_basis_change(const AlgModel& M) {
  const int n = M.n, m = M.m;
  QMatrix G = quotient_gram(M);
  QMatrix f = f_directions(M);
  if (f.cols() != static_cast<std::size_t>(n)) throw ConsistencyError("null_basis_change: f is not n-dimensional");
  // P: first n columns complete f to a basis, last n columns span f
  QMatrix P(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) P(i, n + j) = f(i, j);
  int filled = 0;
  for (int e = 0; e < m && filled < n; ++e) {
    QMatrix trial = P;
    for (int i = 0; i < m; ++i) trial(i, filled) = i == e ? 1 : 0;
    QMatrix cols(m, n + filled + 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < filled + 1; ++j) cols(i, j) = trial(i, j);
      for (int j = 0; j < n; ++j) cols(i, filled + 1 + j) = trial(i, n + j);
    }
    if (cols.rank() == static_cast<std::size_t>(n + filled + 1)) {
      P = trial;
      ++filled;
    }
  }
  QMatrix Gp = P.transpose() * G * P;
  QMatrix A0 = sub_block(Gp, 0, 0, n), B0 = sub_block(Gp, 0, n, n);
  if (!sub_block(Gp, n, n, n).is_zero()) throw ConsistencyError("null_basis_change: f is not isotropic");
  QMatrix Bi = B0.inverse(), BiT = Bi.transpose();
  QMatrix Y = Bi * A0 * BiT * Rational(-1, 2);
  QMatrix T(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T(i, j) = BiT(i, j);
      T(n + i, j) = Y(i, j);
    }
  for (int i = 0; i < n; ++i) T(n + i, n + i) = 1;
  return P * T;
}

NullFrame adapted_frame(const GaugedConnection& gc, const MetricPatch& g) {
  FMatrix Si = inverse_checked(soldering(gc), "adapted_frame");
  return NullFrame::from_matrix(g, Si * lift(null_basis_change(*gc.chart.model)));
}

SpinField pure_spinor_for(const AlgModel& M, const QMatrix& dirs) {
  ExteriorClifford cl = tangent_clifford(M.n);
  QMatrix Tinv = null_basis_change(M).inverse();
  const std::size_t S = cl.spinor_dim();
  QMatrix eqs(dirs.cols() * S, S);
  for (std::size_t col = 0; col < dirs.cols(); ++col) {
    QVector c(M.m);
    for (int i = 0; i < M.m; ++i) c[i] = dirs(i, col);
    QVector fr = Tinv * c;
    QMatrix gam(S, S);
    for (int A = 0; A < M.m; ++A)
      if (fr[A] != 0) gam += cl.gamma_matrix(A) * fr[A];
    for (std::size_t r = 0; r < S; ++r)
      for (std::size_t k = 0; k < S; ++k) eqs(col * S + r, k) = gam(r, k);
  }
  QMatrix ker = eqs.nullspace();
  if (ker.cols() != 1) throw ConsistencyError("pure_spinor_for: annihilated spinors do not form a line");
  SpinField chi;
  for (std::size_t k = 0; k < S; ++k) chi.push_back(RatFunc(ker(k, 0)));
  return chi;
}

TwistorCheck twistor_check(const GaugedConnection& gc, const MetricPatch& g, const ConfCurvature& Kc, const QMatrix& dirs) {
  const AlgModel& M = *gc.chart.model;
  TwistorCheck out;
  out.chi = pure_spinor_for(M, dirs);
  NullFrame nf = adapted_frame(gc, g);
  auto r = twistor_operator(g, Kc, nf, out.chi);
  out.theta_zero = true;
  for (int c = 0; c < M.m && out.theta_zero; ++c)
    for (std::size_t k = 0; k < out.chi.size(); ++k)
      if (!r.theta[c][k].is_zero()) {
        out.theta_zero = false;
        out.witness = "Θ₀(χ)[" + std::to_string(c) + "][" + std::to_string(k) + "] = " + r.theta[c][k].str();
        break;
      }
  out.parallel = true;
  auto dr = spin_tractor_derivative(g, Kc, nf, r.split);
  for (int c = 0; c < M.m && out.parallel; ++c)
    for (std::size_t k = 0; k < out.chi.size(); ++k)
      if (!dr[c].tau[k].is_zero() || !dr[c].chi[k].is_zero()) {
        out.parallel = false;
        if (out.witness.empty())
          out.witness = "∇L₀(χ)[" + std::to_string(c) + "] slot " + std::to_string(k) + " = (" + dr[c].tau[k].str() + ", " +
                        dr[c].chi[k].str() + ")";
        break;
      }
  // kernel of χ in coordinates: frame vectors annihilating χ, compared with the pushed-forward directions
  ExteriorClifford cl = tangent_clifford(M.n);
  QMatrix gam_stack(cl.spinor_dim() * 0 + cl.spinor_dim(), 0);
  QMatrix act(cl.spinor_dim(), M.m);
  for (int A = 0; A < M.m; ++A) {
    QVector s(cl.spinor_dim());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = out.chi[k].evaluate(std::vector<Rational>(kMaxVars));
    QVector v = cl.gamma_matrix(A) * s;
    for (std::size_t k = 0; k < v.size(); ++k) act(k, A) = v[k];
  }
  QMatrix ker = act.nullspace();  // frame coordinates
  QMatrix T = null_basis_change(M);
  QMatrix kerX = T * ker;  // X^ coordinates
  QMatrix both(M.m, kerX.cols() + dirs.cols());
  for (int i = 0; i < M.m; ++i) {
    for (std::size_t j = 0; j < kerX.cols(); ++j) both(i, j) = kerX(i, j);
    for (std::size_t j = 0; j < dirs.cols(); ++j) both(i, kerX.cols() + j) = dirs(i, j);
  }
  out.pure_with_kernel = ker.cols() == static_cast<std::size_t>(M.n) && both.rank() == static_cast<std::size_t>(M.n);
  return out;
}

bool vertical_insertions_vanish(const GaugedConnection& gc, const std::vector<FMatrix>& K) {
  const int n = gc.chart.model->n, m = gc.chart.model->m;
  for (int a = n; a < m; ++a)
    for (int B = 0; B < m; ++B)
      if (!K[a * m + B].is_zero()) return false;
  return true;
}

bool curvature_in_g(const GaugedConnection& gc, const std::vector<FMatrix>& K) {
  const AlgModel& M = *gc.chart.model;
  for (const auto& k : K)
    for (int i = 0; i < M.N; ++i)
      for (int j = 0; j < M.N; ++j) {
        if (!k(i, M.N + j).is_zero() || !k(M.N + i, j).is_zero()) return false;
        if (!(k(M.N + i, M.N + j) == -k(j, i))) return false;
      }
  for (const auto& k : K) {
    RatFunc tr;
    for (int i = 0; i < M.N; ++i) tr += k(i, i);
    if (!tr.is_zero()) return false;
  }
  return true;
}

bool spinor_parallel(const GaugedConnection& gc, const SpinModel& sm, const QVector& s) {
  std::vector<RatFunc> sf(s.begin(), s.end());
  for (const auto& w : gc.omega)
    for (const auto& x : sm.spin(w) * sf)
      if (!x.is_zero()) return false;
  return true;
}

bool preserves_splitting(const GaugedConnection& gc) {
  const int N = gc.chart.model->N;
  for (const auto& w : gc.omega)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (!w(i, N + j).is_zero() || !w(N + i, j).is_zero()) return false;
  return true;
}

SpinTractor<RatFunc> einstein_spin_product(const MetricPatch& g, const ConfCurvature& Kc, const NullFrame& nf,
                                           const RatFunc& sigma, const SpinField& chi) {
  auto t = einstein_bgg(g, Kc, sigma).split;
  auto s = twistor_operator(g, Kc, nf, chi).split;
  return tractor_clifford(tangent_clifford(g.n), to_frame(Kc, nf, t), s);
}

bool is_zero(const SpinTractor<RatFunc>& s) {
  for (const auto& x : s.tau)
    if (!x.is_zero()) return false;
  for (const auto& x : s.chi)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<RatFunc> k_field(const GaugedConnection& gc) {
  const AlgModel& M = *gc.chart.model;
  FMatrix Si = inverse_checked(soldering(gc), "k_field");
  std::vector<RatFunc> c(M.m);
  for (int i = 0; i < M.m; ++i) c[i] = RatFunc(M.quotient_coords(M.K)[i]);
  return Si * c;
}

namespace {

std::vector<RatFunc> lie_derivative_metric(const MetricPatch& g, const std::vector<RatFunc>& v) {
  const int m = g.m();
  std::vector<RatFunc> L(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      RatFunc s;
      for (int c = 0; c < m; ++c) {
        if (!v[c].is_zero()) s += v[c] * g.g(a, b).derivative(g.coord(c));
        s += g.g(c, b) * v[c].derivative(g.coord(a)) + g.g(a, c) * v[c].derivative(g.coord(b));
      }
      L[a * m + b] = s;
    }
  return L;
}

std::vector<RatFunc> trace_free(const MetricPatch& g, const FMatrix& ginv, std::vector<RatFunc> L) {
  const int m = g.m();
  RatFunc tr;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (!ginv(a, b).is_zero()) tr += ginv(a, b) * L[a * m + b];
  tr *= q(1, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) L[a * m + b] -= tr * g.g(a, b);
  return L;
}

}  // namespace

bool is_conformal_killing(const MetricPatch& g, const std::vector<RatFunc>& v) {
  for (const auto& x : trace_free(g, g.g.inverse(), lie_derivative_metric(g, v)))
    if (!x.is_zero()) return false;
  return true;
}

std::size_t conformal_killing_dim(const MetricPatch& g, int degree) {
  FMatrix ginv = g.g.inverse();
  std::vector<std::vector<RatFunc>> images;
  for (const auto& mono : monomials_up_to(chart_vars(g.n), degree))
    for (int c = 0; c < g.m(); ++c) {
      std::vector<RatFunc> v(g.m());
      v[c] = RatFunc(mono);
      images.push_back(trace_free(g, ginv, lie_derivative_metric(g, v)));
    }
  return q_linear_relations(images).cols();
}

std::size_t projective_killing_dim(const ProjectiveStructure& ps, int degree) {
  // (L_v D)^a_{bc} = ∂_b∂_c v^a + v^e∂_eΓ^a_{bc} - Γ^e_{bc}∂_e v^a + Γ^a_{ec}∂_b v^e + Γ^a_{be}∂_c v^e,
  // required to have the form δ^a_b Υ_c + δ^a_c Υ_b; its trace-adjusted part must vanish.
  const int n = ps.n;
  auto lie = [&](const std::vector<RatFunc>& v) {
    std::vector<RatFunc> L(n * n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          RatFunc s = v[a].derivative(ps.x(c)).derivative(ps.x(b));
          for (int e = 0; e < n; ++e) {
            s += v[e] * ps.G(a, b, c).derivative(ps.x(e)) - ps.G(e, b, c) * v[a].derivative(ps.x(e)) +
                 ps.G(a, e, c) * v[e].derivative(ps.x(b)) + ps.G(a, b, e) * v[e].derivative(ps.x(c));
          }
          L[(a * n + b) * n + c] = s;
        }
    std::vector<RatFunc> ups(n);
    for (int c = 0; c < n; ++c) {
      for (int p = 0; p < n; ++p) ups[c] += L[(p * n + p) * n + c];
      ups[c] *= q(1, n + 1);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (a == b) L[(a * n + b) * n + c] -= ups[c];
          if (a == c) L[(a * n + b) * n + c] -= ups[b];
        }
    return L;
  };
  std::vector<std::vector<RatFunc>> images;
  for (const auto& mono : monomials_up_to(base_vars(n), degree))
    for (int a = 0; a < n; ++a) {
      std::vector<RatFunc> v(n);
      v[a] = RatFunc(mono);
      images.push_back(lie(v));
    }
  return q_linear_relations(images).cols();
}

std::vector<std::vector<RatFunc>> gauge_tractor_derivative(const GaugedConnection& gc, const std::vector<RatFunc>& v) {
  const AlgModel& M = *gc.chart.model;
  std::vector<std::vector<RatFunc>> out;
  for (int A = 0; A < M.m; ++A) {
    auto w = gc.omega[A] * v;
    for (int k = 0; k < M.D; ++k) w[k] += v[k].derivative(coord(M.n, A));
    out.push_back(std::move(w));
  }
  return out;
}

ConfTractor gauge_to_metric_slots(const GaugedConnection& gc, const MetricPatch& g, const std::vector<RatFunc>& v) {
  const AlgModel& M = *gc.chart.model;
  auto hform = [&](const std::vector<RatFunc>& a, const QVector& b) {
    RatFunc s;
    for (int k = 0; k < M.D; ++k)
      for (int l = 0; l < M.D; ++l)
        if (M.h(k, l) != 0 && b[l] != 0) s += a[k] * RatFunc(M.h(k, l) * b[l]);
    return s;
  };
  ConfTractor t;
  t.gauge = g.gauge();
  t.rho = hform(v, M.v_minus_tilde);
  t.sigma = hform(v, M.v_plus_tilde);
  std::vector<RatFunc> w = v;
  for (int k = 0; k < M.D; ++k) w[k] -= t.rho * RatFunc(M.v_plus_tilde[k]) + t.sigma * RatFunc(M.v_minus_tilde[k]);
  // w = Σ c_i X^_i v+; φ_A = h(w, ω~_A v+ mod L) = Σ_j c-pairing through S
  FMatrix S = soldering(gc);
  t.phi.assign(M.m, RatFunc());
  for (int j = 0; j < M.m; ++j) {
    RatFunc pj = hform(w, M.X_hat[j] * M.v_plus_tilde);
    for (int A = 0; A < M.m; ++A)
      if (!S(j, A).is_zero()) t.phi[A] += pj * S(j, A);
  }
  return t;
}

}  // namespace feff
