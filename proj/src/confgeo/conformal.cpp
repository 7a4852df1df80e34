#include "feff/confgeo/conformal.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "feff/symcore/linear.hpp"

namespace feff {

namespace {

RatFunc q(long a, long b = 1) { return RatFunc(Rational(a, b)); }

void check_gauge(const MetricPatch& mp, std::uint64_t gauge, const char* what) {
  if (gauge != mp.gauge()) throw DomainError(std::string(what) + ": tractor is expressed in a different gauge");
}

}  // namespace

MetricPatch MetricPatch::flat(int n) {
  MetricPatch mp;
  mp.n = n;
  mp.g = FMatrix(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    mp.g(a, n + a) = RatFunc(1);
    mp.g(n + a, a) = RatFunc(1);
  }
  mp.validate();
  return mp;
}

std::vector<Rational> MetricPatch::point() const {
  std::vector<Rational> pt(kMaxVars, Rational(0));
  if (!base.empty()) {
    if (base.size() != static_cast<std::size_t>(m())) throw DomainError("metric patch: base point has the wrong dimension");
    for (int a = 0; a < m(); ++a) pt[coord(a)] = base[a];
  }
  return pt;
}

void MetricPatch::validate() const {
  if (n < 2 || n > kMaxBaseDim) throw DomainError("metric patch: n must lie in [2, 5]");
  if (g.rows() != g.cols()) throw DomainError("metric patch: g is not square");
  if (g.rows() % 2) throw DomainError("metric patch: odd dimension " + std::to_string(g.rows()) + " is not supported");
  if (g.rows() != static_cast<std::size_t>(m())) throw DomainError("metric patch: g must be 2n x 2n");
  auto allowed = chart_vars(n);
  for (int a = 0; a < m(); ++a)
    for (int b = 0; b < m(); ++b) {
      if (!(g(a, b) == g(b, a))) throw DomainError("metric patch: g is not symmetric");
      for (VarId v : g(a, b).variables())
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
          throw DomainError("metric patch: g depends on " + var_name(v) + ", outside the chart");
    }
  if (g.determinant().is_zero()) throw DomainError("metric patch: g is degenerate");
  auto pt = point();
  QMatrix g0(m(), m());
  for (int a = 0; a < m(); ++a)
    for (int b = 0; b < m(); ++b) g0(a, b) = g(a, b).evaluate(pt);
  Inertia in = inertia(g0);
  if (in.zero) throw DomainError("metric patch: g is degenerate at the base point");
  if (in.pos != n) throw DomainError("metric patch: signature is not (n,n) at the base point");
}

std::uint64_t MetricPatch::gauge() const {
  std::uint64_t h = 14695981039346656037ull ^ static_cast<std::uint64_t>(n);
  for (const auto& x : g.data()) h = (h ^ std::hash<std::string>{}(x.str())) * 1099511628211ull;
  return h;
}

MetricPatch MetricPatch::rescaled(const RatFunc& omega) const {
  MetricPatch out = *this;
  out.g *= omega * omega;
  return out;
}

Inertia inertia(const QMatrix& s0) {
  QMatrix s = s0;
  const std::size_t k = s.rows();
  Inertia out;
  std::size_t done = 0;
  std::vector<bool> used(k, false);
  while (done < k) {
    std::size_t piv = k;
    for (std::size_t i = 0; i < k && piv == k; ++i)
      if (!used[i] && s(i, i) != 0) piv = i;
    if (piv == k) {
      std::size_t a = k, b = k;
      for (std::size_t i = 0; i < k && a == k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (!used[i] && !used[j] && i != j && s(i, j) != 0) {
            a = i;
            b = j;
            break;
          }
      if (a == k) {
        for (std::size_t i = 0; i < k; ++i) out.zero += used[i] ? 0 : 1;
        return out;
      }
      // replace e_a by e_a + e_b, which has nonzero square 2 s_ab
      for (std::size_t j = 0; j < k; ++j) s(a, j) += s(b, j);
      for (std::size_t i = 0; i < k; ++i) s(i, a) += s(i, b);
      piv = a;
    }
    const Rational d = s(piv, piv);
    (d > 0 ? out.pos : out.neg) += 1;
    used[piv] = true;
    ++done;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!used[i] && !used[j]) s(i, j) -= s(i, piv) * s(piv, j) / d;
    for (std::size_t j = 0; j < k; ++j) {
      s(piv, j) = 0;
      s(j, piv) = 0;
    }
  }
  return out;
}

ConfCurvature conf_curvature(const MetricPatch& mp) {
  mp.validate();
  const int m = mp.m();
  ConfCurvature K;
  K.m = m;
  K.ginv = mp.g.inverse();
  std::vector<std::vector<RatFunc>> dg(m, std::vector<RatFunc>(m * m));
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) dg[c][a * m + b] = mp.g(a, b).derivative(mp.coord(c));
  K.Gam.assign(m * m * m, RatFunc());
  for (int b = 0; b < m; ++b)
    for (int c = b; c < m; ++c) {
      std::vector<RatFunc> low(m);
      for (int d = 0; d < m; ++d) low[d] = (dg[b][d * m + c] + dg[c][d * m + b] - dg[d][b * m + c]) * q(1, 2);
      for (int a = 0; a < m; ++a) {
        RatFunc s;
        for (int d = 0; d < m; ++d)
          if (!K.ginv(a, d).is_zero() && !low[d].is_zero()) s += K.ginv(a, d) * low[d];
        K.Gam[(a * m + b) * m + c] = s;
        K.Gam[(a * m + c) * m + b] = s;
      }
    }
  K.R.assign(m * m * m * m, RatFunc());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          RatFunc v = K.gam(c, b, d).derivative(mp.coord(a)) - K.gam(c, a, d).derivative(mp.coord(b));
          for (int e = 0; e < m; ++e) v += K.gam(c, a, e) * K.gam(e, b, d) - K.gam(c, b, e) * K.gam(e, a, d);
          K.R[((a * m + b) * m + c) * m + d] = v;
          K.R[((b * m + a) * m + c) * m + d] = -v;
        }
  K.Ric.assign(m * m, RatFunc());
  for (int b = 0; b < m; ++b)
    for (int d = 0; d < m; ++d)
      for (int a = 0; a < m; ++a) K.Ric[b * m + d] += K.r(a, b, a, d);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) K.Sc += K.ginv(a, b) * K.ric(a, b);
  K.P.assign(m * m, RatFunc());
  RatFunc sc_term = K.Sc * q(1, 2 * (m - 1));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) K.P[a * m + b] = (K.ric(a, b) - sc_term * mp.g(a, b)) * q(1, m - 2);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) K.J += K.ginv(a, b) * K.p(a, b);
  // P_b^c
  std::vector<RatFunc> Pup(m * m);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      for (int e = 0; e < m; ++e) Pup[b * m + c] += K.p(b, e) * K.ginv(e, c);
  K.C = K.R;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          RatFunc& x = K.C[((a * m + b) * m + c) * m + d];
          if (c == a) x -= K.p(b, d);
          if (c == b) x += K.p(a, d);
          x += mp.g(d, a) * Pup[b * m + c] - mp.g(d, b) * Pup[a * m + c];
        }
    }
  auto DP = [&](int a, int b, int c) {
    RatFunc v = K.p(b, c).derivative(mp.coord(a));
    for (int e = 0; e < m; ++e) v -= K.gam(e, a, b) * K.p(e, c) + K.gam(e, a, c) * K.p(b, e);
    return v;
  };
  K.Y.assign(m * m * m, RatFunc());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (a != b) K.Y[(a * m + b) * m + c] = DP(a, b, c) - DP(b, a, c);
  return K;
}

RatFunc std_tractor_metric(const ConfCurvature& K, const ConfTractor& a, const ConfTractor& b) {
  RatFunc s = a.rho * b.sigma + a.sigma * b.rho;
  for (int i = 0; i < K.m; ++i)
    for (int j = 0; j < K.m; ++j)
      if (!K.ginv(i, j).is_zero()) s += K.ginv(i, j) * a.phi[i] * b.phi[j];
  return s;
}

std::vector<ConfTractor> std_tractor_derivative(const MetricPatch& mp, const ConfCurvature& K, const ConfTractor& t) {
  check_gauge(mp, t.gauge, "std_tractor_derivative");
  const int m = mp.m();
  if (t.phi.size() != static_cast<std::size_t>(m)) throw DomainError("std_tractor_derivative: slot count mismatch");
  std::vector<RatFunc> phi_up(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) phi_up[a] += K.ginv(a, b) * t.phi[b];
  std::vector<ConfTractor> out;
  for (int c = 0; c < m; ++c) {
    const VarId xc = mp.coord(c);
    ConfTractor d;
    d.gauge = t.gauge;
    d.rho = t.rho.derivative(xc);
    for (int b = 0; b < m; ++b) d.rho -= K.p(c, b) * phi_up[b];
    d.phi.resize(m);
    for (int a = 0; a < m; ++a) {
      RatFunc v = t.phi[a].derivative(xc);
      for (int e = 0; e < m; ++e) v -= K.gam(e, c, a) * t.phi[e];
      d.phi[a] = v + t.sigma * K.p(c, a) + t.rho * mp.g(c, a);
    }
    d.sigma = t.sigma.derivative(xc) - t.phi[c];
    out.push_back(std::move(d));
  }
  return out;
}

EinsteinBgg einstein_bgg(const MetricPatch& mp, const ConfCurvature& K, const RatFunc& sigma) {
  const int m = mp.m();
  std::vector<RatFunc> d1(m);
  for (int a = 0; a < m; ++a) d1[a] = sigma.derivative(mp.coord(a));
  std::vector<RatFunc> h(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      RatFunc v = d1[b].derivative(mp.coord(a));
      for (int e = 0; e < m; ++e) v -= K.gam(e, a, b) * d1[e];
      h[a * m + b] = v + K.p(a, b) * sigma;
    }
  RatFunc lap, tr;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (!K.ginv(a, b).is_zero()) {
        lap -= K.ginv(a, b) * (h[a * m + b] - K.p(a, b) * sigma);
        tr += K.ginv(a, b) * h[a * m + b];
      }
  EinsteinBgg out;
  out.split.gauge = mp.gauge();
  out.split.rho = (lap - K.J * sigma) * q(1, m);
  out.split.phi = d1;
  out.split.sigma = sigma;
  out.theta = h;
  tr *= q(1, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.theta[a * m + b] -= tr * mp.g(a, b);
  return out;
}

std::size_t einstein_kernel_dim(const MetricPatch& mp, int degree) {
  ConfCurvature K = conf_curvature(mp);
  std::vector<std::vector<RatFunc>> images;
  for (const auto& mono : monomials_up_to(chart_vars(mp.n), degree))
    images.push_back(einstein_bgg(mp, K, RatFunc(mono)).theta);
  return q_linear_relations(images).cols();
}

NullFrame NullFrame::from_matrix(const MetricPatch& mp, FMatrix F) {
  const int n = mp.n, m = mp.m();
  if (F.rows() != static_cast<std::size_t>(m) || F.cols() != static_cast<std::size_t>(m))
    throw DomainError("null frame: expected a 2n x 2n frame matrix");
  FMatrix H = F.transpose() * mp.g * F;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool paired = (i < n && j == i + n) || (j < n && i == j + n);
      if (!(H(i, j) == RatFunc(paired ? 1 : 0))) throw DomainError("null frame: frame is not normalized against g");
    }
  NullFrame nf;
  nf.n = n;
  nf.Finv = F.inverse();
  nf.F = std::move(F);
  return nf;
}

NullFrame NullFrame::vertical(const MetricPatch& mp) {
  const int n = mp.n;
  FMatrix A(n, n), B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!mp.g(n + i, n + j).is_zero()) throw DomainError("null frame: fibre directions are not isotropic");
      A(i, j) = mp.g(i, j);
      B(i, j) = mp.g(i, n + j);
    }
  FMatrix Bi = B.inverse();
  FMatrix BiT = Bi.transpose();
  FMatrix Y = Bi * A * BiT * q(-1, 2);
  FMatrix F(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      F(i, j) = BiT(i, j);
      F(n + i, j) = Y(i, j);
    }
  for (int i = 0; i < n; ++i) F(n + i, n + i) = RatFunc(1);
  return from_matrix(mp, std::move(F));
}

std::vector<RatFunc> NullFrame::to_frame(const std::vector<RatFunc>& v) const { return Finv * v; }

FMatrix NullFrame::gamma(int c) const {
  ExteriorClifford cl = tangent_clifford(n);
  FMatrix out(cl.spinor_dim(), cl.spinor_dim());
  for (int A = 0; A < 2 * n; ++A)
    if (!Finv(A, c).is_zero()) out += lift(cl.gamma_matrix(A)) * Finv(A, c);
  return out;
}

std::vector<SpinField> spinor_derivative(const MetricPatch& mp, const ConfCurvature& K, const NullFrame& nf,
                                         const SpinField& chi) {
  const int m = mp.m();
  ExteriorClifford cl = tangent_clifford(mp.n);
  if (chi.size() != static_cast<std::size_t>(cl.spinor_dim())) throw DomainError("spinor_derivative: spinor size mismatch");
  std::vector<SpinField> out;
  for (int c = 0; c < m; ++c) {
    FMatrix dF(m, m), G(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        dF(a, b) = nf.F(a, b).derivative(mp.coord(c));
        G(a, b) = K.gam(a, c, b);
      }
    FMatrix w = nf.Finv * (dF + G * nf.F);
    SpinField d = cl.spin_matrix(w) * chi;
    for (std::size_t k = 0; k < chi.size(); ++k) d[k] += chi[k].derivative(mp.coord(c));
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

using Q2 = QSqrt2<RatFunc>;

std::vector<Q2> mul(const FMatrix& M, const std::vector<Q2>& v) {
  std::vector<Q2> out(M.rows(), Q2(0));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero() && !v[j].is_zero()) out[i] += Q2(M(i, j)) * v[j];
  return out;
}

std::vector<std::vector<Q2>> q2_derivative(const MetricPatch& mp, const ConfCurvature& K, const NullFrame& nf,
                                           const std::vector<Q2>& s) {
  SpinField a(s.size()), b(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    a[k] = s[k].a;
    b[k] = s[k].b;
  }
  auto da = spinor_derivative(mp, K, nf, a);
  auto db = spinor_derivative(mp, K, nf, b);
  std::vector<std::vector<Q2>> out(da.size());
  for (std::size_t c = 0; c < da.size(); ++c)
    for (std::size_t k = 0; k < s.size(); ++k) out[c].push_back(Q2(da[c][k], db[c][k]));
  return out;
}

}  // namespace

std::vector<SpinTractor<RatFunc>> spin_tractor_derivative(const MetricPatch& mp, const ConfCurvature& K,
                                                          const NullFrame& nf, const SpinTractor<RatFunc>& s) {
  check_gauge(mp, s.gauge, "spin_tractor_derivative");
  const int m = mp.m();
  if (nf.n != mp.n || nf.F.rows() != static_cast<std::size_t>(m)) throw DomainError("spin_tractor_derivative: frame incompatible with the metric");
  auto dtau = q2_derivative(mp, K, nf, s.tau);
  auto dchi = q2_derivative(mp, K, nf, s.chi);
  const Q2 inv_sqrt2(RatFunc(0), RatFunc(Rational(1, 2)));
  std::vector<FMatrix> gam;
  for (int c = 0; c < m; ++c) gam.push_back(nf.gamma(c));
  std::vector<SpinTractor<RatFunc>> out;
  for (int c = 0; c < m; ++c) {
    // P_{cp} γ^p
    FMatrix Pg(gam[0].rows(), gam[0].cols());
    for (int p = 0; p < m; ++p) {
      RatFunc coef;
      for (int e = 0; e < m; ++e) coef += K.p(c, e) * K.ginv(e, p);
      if (!coef.is_zero()) Pg += gam[p] * coef;
    }
    SpinTractor<RatFunc> d;
    d.gauge = s.gauge;
    d.tau = dtau[c];
    auto t1 = mul(Pg, s.chi);
    for (std::size_t k = 0; k < t1.size(); ++k) d.tau[k] += inv_sqrt2 * t1[k];
    d.chi = dchi[c];
    auto t2 = mul(gam[c], s.tau);
    for (std::size_t k = 0; k < t2.size(); ++k) d.chi[k] += inv_sqrt2 * t2[k];
    out.push_back(std::move(d));
  }
  return out;
}

StdTractor<RatFunc> to_frame(const ConfCurvature& K, const NullFrame& nf, const ConfTractor& t) {
  StdTractor<RatFunc> out;
  out.rho = t.rho;
  out.sigma = t.sigma;
  out.gauge = t.gauge;
  out.phi = nf.to_frame(K.ginv * t.phi);
  return out;
}

TwistorResult twistor_operator(const MetricPatch& mp, const ConfCurvature& K, const NullFrame& nf, const SpinField& chi) {
  bool even = false, odd = false;
  for (std::size_t k = 0; k < chi.size(); ++k)
    if (!chi[k].is_zero()) (ExteriorClifford::degree(k) % 2 ? odd : even) = true;
  if (even && odd) throw DomainError("twistor_operator: spinor field mixes parities");
  const int m = mp.m();
  auto D = spinor_derivative(mp, K, nf, chi);
  std::vector<FMatrix> gam;
  for (int c = 0; c < m; ++c) gam.push_back(nf.gamma(c));
  TwistorResult out;
  out.dirac.assign(chi.size(), RatFunc());
  for (int p = 0; p < m; ++p)
    for (int e = 0; e < m; ++e)
      if (!K.ginv(p, e).is_zero()) {
        auto v = gam[p] * D[e];
        for (std::size_t k = 0; k < v.size(); ++k) out.dirac[k] += K.ginv(p, e) * v[k];
      }
  for (int c = 0; c < m; ++c) {
    auto v = gam[c] * out.dirac;
    SpinField th = D[c];
    for (std::size_t k = 0; k < v.size(); ++k) th[k] += v[k] * q(1, m);
    out.theta.push_back(std::move(th));
  }
  out.split.gauge = mp.gauge();
  const Q2 coef(RatFunc(0), RatFunc(Rational(1, 2 * mp.n)));
  for (std::size_t k = 0; k < chi.size(); ++k) {
    out.split.tau.push_back(coef * Q2(out.dirac[k]));
    out.split.chi.push_back(Q2(chi[k]));
  }
  return out;
}

std::size_t twistor_kernel_dim(const MetricPatch& mp, const NullFrame& nf, int degree) {
  ConfCurvature K = conf_curvature(mp);
  const std::size_t S = std::size_t(1) << mp.n;
  std::vector<std::vector<RatFunc>> images;
  for (const auto& mono : monomials_up_to(chart_vars(mp.n), degree))
    for (std::size_t k = 0; k < S; ++k) {
      SpinField chi(S);
      chi[k] = RatFunc(mono);
      auto r = twistor_operator(mp, K, nf, chi);
      std::vector<RatFunc> flat;
      for (auto& t : r.theta) flat.insert(flat.end(), t.begin(), t.end());
      images.push_back(std::move(flat));
    }
  return q_linear_relations(images).cols();
}

}  // namespace feff
