#include "feff/projgeo/projective.hpp"

#include <algorithm>

#include "feff/symcore/linear.hpp"

namespace feff {

ProjectiveStructure ProjectiveStructure::flat(int n) {
  ProjectiveStructure ps;
  ps.n = n;
  ps.gamma.assign(n * n * n, RatFunc());
  ps.validate();
  return ps;
}

RatFunc ProjectiveStructure::trace(int c) const {
  RatFunc t;
  for (int p = 0; p < n; ++p) t += G(p, c, p);
  return t;
}

void ProjectiveStructure::validate() const {
  if (n < 2 || n > kMaxBaseDim) throw DomainError("projective structure: n must lie in [2, 5]");
  if (gamma.size() != static_cast<std::size_t>(n * n * n))
    throw DomainError("projective structure: expected n^3 Christoffel symbols");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (!(G(a, b, c) == G(a, c, b))) throw DomainError("projective structure: Γ is not symmetric (torsion)");
  auto allowed = base_vars(n);
  for (const auto& g : gamma)
    for (VarId v : g.variables())
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
        throw DomainError("projective structure: Γ depends on " + var_name(v) + ", outside the chart");
}

std::uint64_t ProjectiveStructure::gauge() const {
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n);
  for (const auto& g : gamma) h = (h ^ std::hash<std::string>{}(g.str())) * 1099511628211ull;
  return h;
}

RatFunc ProjCurvature::ricci(int b, int d) const {
  RatFunc s;
  for (int p = 0; p < n; ++p) s += r(p, b, p, d);
  return s;
}

RatFunc density_derivative(const ProjectiveStructure& ps, const RatFunc& f, int w, int c) {
  RatFunc out = f.derivative(ps.x(c));
  if (w != 0 && !f.is_zero()) out += f * ps.trace(c) * RatFunc(Rational(w, ps.n + 1));
  return out;
}

ProjCurvature proj_curvature(const ProjectiveStructure& ps) {
  ps.validate();
  const int n = ps.n;
  ProjCurvature K;
  K.n = n;
  K.R.assign(n * n * n * n, RatFunc());
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = c1 + 1; c2 < n; ++c2)
      for (int a = 0; a < n; ++a)
        for (int p = 0; p < n; ++p) {
          RatFunc v = ps.G(a, c2, p).derivative(ps.x(c1)) - ps.G(a, c1, p).derivative(ps.x(c2));
          for (int q = 0; q < n; ++q) v += ps.G(a, c1, q) * ps.G(q, c2, p) - ps.G(a, c2, q) * ps.G(q, c1, p);
          K.R[((c1 * n + c2) * n + a) * n + p] = v;
          K.R[((c2 * n + c1) * n + a) * n + p] = -v;
        }
  K.P.assign(n * n, RatFunc());
  const RatFunc sym(Rational(1, n - 1)), alt(Rational(1, n + 1)), half(Rational(1, 2));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      RatFunc ab = K.ricci(a, b), ba = K.ricci(b, a);
      K.P[a * n + b] = (ab + ba) * half * sym + (ab - ba) * half * alt;
    }
  K.C.assign(n * n * n * n, RatFunc());
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = 0; c2 < n; ++c2)
      for (int a = 0; a < n; ++a)
        for (int p = 0; p < n; ++p) {
          RatFunc v = K.r(c1, c2, a, p);
          if (a == c2) v += K.p(c1, p);
          if (a == c1) v -= K.p(c2, p);
          if (a == p) v += K.p(c1, c2) - K.p(c2, c1);
          K.C[((c1 * n + c2) * n + a) * n + p] = v;
        }
  // D_c P_{ba} = ∂_c P_{ba} - Γ^q_{cb} P_{qa} - Γ^q_{ca} P_{bq}
  auto DP = [&](int c, int b, int a) {
    RatFunc v = K.p(b, a).derivative(ps.x(c));
    for (int q = 0; q < n; ++q) v -= ps.G(q, c, b) * K.p(q, a) + ps.G(q, c, a) * K.p(b, q);
    return v;
  };
  K.A.assign(n * n * n, RatFunc());
  for (int a = 0; a < n; ++a)
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = c1 + 1; c2 < n; ++c2) {
        RatFunc v = DP(c1, c2, a) - DP(c2, c1, a);
        K.A[(a * n + c1) * n + c2] = v;
        K.A[(a * n + c2) * n + c1] = -v;
      }
  return K;
}

ProjectiveStructure proj_change(const ProjectiveStructure& ps, const std::vector<RatFunc>& upsilon) {
  ps.validate();
  if (upsilon.size() != static_cast<std::size_t>(ps.n)) throw DomainError("proj_change: Υ must have n components");
  ProjectiveStructure out = ps;
  for (int b = 0; b < ps.n; ++b)
    for (int a = 0; a < ps.n; ++a) {
      out.G(b, a, b) += upsilon[a];
      out.G(b, b, a) += upsilon[a];
    }
  return out;
}

ProjectiveStructure trace_free_representative(const ProjectiveStructure& ps) {
  std::vector<RatFunc> ups;
  for (int c = 0; c < ps.n; ++c) ups.push_back(ps.trace(c) * RatFunc(Rational(-1, ps.n + 1)));
  return proj_change(ps, ups);
}

std::vector<ProjTractor> tractor_derivative(const ProjectiveStructure& ps, const ProjTractor& t) {
  if (t.gauge != ps.gauge()) throw DomainError("tractor_derivative: tractor is expressed in a different gauge");
  const int n = ps.n;
  if (t.vec.size() != static_cast<std::size_t>(n)) throw DomainError("tractor_derivative: slot count mismatch");
  ProjCurvature K = proj_curvature(ps);
  std::vector<ProjTractor> out;
  for (int c = 0; c < n; ++c) {
    ProjTractor d;
    d.bundle = t.bundle;
    d.gauge = t.gauge;
    d.vec.assign(n, RatFunc());
    if (t.bundle == ProjBundle::T) {
      d.scalar = density_derivative(ps, t.scalar, -1, c);
      for (int p = 0; p < n; ++p) d.scalar -= K.p(c, p) * t.vec[p];
      for (int a = 0; a < n; ++a) {
        RatFunc v = density_derivative(ps, t.vec[a], -1, c);
        for (int p = 0; p < n; ++p) v += ps.G(a, c, p) * t.vec[p];
        if (a == c) v += t.scalar;
        d.vec[a] = v;
      }
    } else {
      d.scalar = density_derivative(ps, t.scalar, 1, c) - t.vec[c];
      for (int a = 0; a < n; ++a) {
        RatFunc v = density_derivative(ps, t.vec[a], 1, c);
        for (int p = 0; p < n; ++p) v -= ps.G(p, c, a) * t.vec[p];
        v += K.p(c, a) * t.scalar;
        d.vec[a] = v;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

RatFunc tractor_pairing(const ProjTractor& dual, const ProjTractor& t) {
  if (dual.bundle != ProjBundle::Tstar || t.bundle != ProjBundle::T)
    throw DomainError("tractor_pairing: expected (T*, T)");
  if (dual.gauge != t.gauge) throw DomainError("tractor_pairing: gauge mismatch");
  RatFunc s = dual.scalar * t.scalar;
  for (std::size_t a = 0; a < t.vec.size(); ++a) s += dual.vec[a] * t.vec[a];
  return s;
}

namespace {

// D_c σ^a for σ ∈ E^a[-1]
RatFunc d_vector(const ProjectiveStructure& ps, const std::vector<RatFunc>& sigma, int c, int a) {
  RatFunc v = density_derivative(ps, sigma[a], -1, c);
  for (int p = 0; p < ps.n; ++p) v += ps.G(a, c, p) * sigma[p];
  return v;
}

RatFunc divergence(const ProjectiveStructure& ps, const std::vector<RatFunc>& sigma) {
  RatFunc s;
  for (int p = 0; p < ps.n; ++p) s += d_vector(ps, sigma, p, p);
  return s;
}

}  // namespace

ProjTractor splitting_T(const ProjectiveStructure& ps, const std::vector<RatFunc>& sigma) {
  if (sigma.size() != static_cast<std::size_t>(ps.n)) throw DomainError("splitting_T: σ must have n components");
  ProjTractor t;
  t.bundle = ProjBundle::T;
  t.gauge = ps.gauge();
  t.scalar = divergence(ps, sigma) * RatFunc(Rational(-1, ps.n));
  t.vec = sigma;
  return t;
}

ProjTractor splitting_Tstar(const ProjectiveStructure& ps, const RatFunc& sigma) {
  ProjTractor t;
  t.bundle = ProjBundle::Tstar;
  t.gauge = ps.gauge();
  t.scalar = sigma;
  for (int a = 0; a < ps.n; ++a) t.vec.push_back(density_derivative(ps, sigma, 1, a));
  return t;
}

std::vector<RatFunc> bgg_T(const ProjectiveStructure& ps, const std::vector<RatFunc>& sigma) {
  if (sigma.size() != static_cast<std::size_t>(ps.n)) throw DomainError("bgg_T: σ must have n components");
  const int n = ps.n;
  RatFunc div = divergence(ps, sigma) * RatFunc(Rational(1, n));
  std::vector<RatFunc> out(n * n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a) {
      out[c * n + a] = d_vector(ps, sigma, c, a);
      if (a == c) out[c * n + a] -= div;
    }
  return out;
}

std::vector<RatFunc> bgg_Tstar(const ProjectiveStructure& ps, const RatFunc& sigma) {
  const int n = ps.n;
  ProjCurvature K = proj_curvature(ps);
  std::vector<RatFunc> d1;
  for (int b = 0; b < n; ++b) d1.push_back(density_derivative(ps, sigma, 1, b));
  std::vector<RatFunc> out(n * n);
  // D_a(D_bσ) with D_bσ ∈ E_b[1]
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      RatFunc v = density_derivative(ps, d1[b], 1, a);
      for (int q = 0; q < n; ++q) v -= ps.G(q, a, b) * d1[q];
      out[a * n + b] = v + sigma * K.p(a, b);
    }
  return out;
}

std::size_t bgg_kernel_dim(const ProjectiveStructure& ps, ProjBundle bundle, int degree) {
  ps.validate();
  const int n = ps.n;
  auto monos = monomials_up_to(base_vars(n), degree);
  std::vector<std::vector<RatFunc>> images;
  if (bundle == ProjBundle::Tstar) {
    for (const auto& m : monos) images.push_back(bgg_Tstar(ps, RatFunc(m)));
  } else {
    for (int a = 0; a < n; ++a)
      for (const auto& m : monos) {
        std::vector<RatFunc> sigma(n);
        sigma[a] = RatFunc(m);
        images.push_back(bgg_T(ps, sigma));
      }
  }
  return q_linear_relations(images).cols();
}

ProjCartan cartan_gauge(const ProjectiveStructure& ps, const Kostant& K) {
  ps.validate();
  const int n = ps.n, N = n + 1;
  if (K.model().n != n) throw DomainError("cartan_gauge: algebra model of the wrong dimension");
  ProjCurvature curv = proj_curvature(ps);
  ProjCartan out;
  for (int c = 0; c < n; ++c) {
    FMatrix w(N, N);
    RatFunc tr = ps.trace(c) * RatFunc(Rational(-1, n + 1));
    w(0, 0) = tr;
    for (int p = 0; p < n; ++p) w(0, p + 1) = -curv.p(c, p);
    w(c + 1, 0) = RatFunc(1);
    for (int a = 0; a < n; ++a) {
      for (int p = 0; p < n; ++p) w(a + 1, p + 1) = ps.G(a, c, p);
      w(a + 1, a + 1) += tr;
    }
    if (!w.trace().is_zero()) throw ConsistencyError("cartan_gauge: ω is not trace-free");
    out.omega.push_back(std::move(w));
  }
  out.kappa = K.zero<RatFunc>(Side::projective, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const VarId xi = ps.x(i), xj = ps.x(j);
      FMatrix k = out.omega[j].map([&](const RatFunc& f) { return f.derivative(xi); }) -
                  out.omega[i].map([&](const RatFunc& f) { return f.derivative(xj); }) +
                  bracket(out.omega[i], out.omega[j]);
      out.kappa.at(j, i) = k * RatFunc(-1);
      out.kappa.at(i, j) = std::move(k);
    }
  for (int i = 0; i < n; ++i)
    if (!(K.frame<Rational>(Side::projective)[i] == QMatrix::unit(N, N, i + 1, 0)))
      throw ConsistencyError("cartan_gauge: frame does not match the soldering form");
  return out;
}

}  // namespace feff
