#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

#include "feff/symcore/poly.hpp"

namespace feff {

namespace {

using Coeffs = std::vector<Poly>;  // dense in the main variable, index = power

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

Poly content_of(const Coeffs& c) {
  Poly g;
  for (const auto& p : c) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : gcd(g, p);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Coeffs divide_all(const Coeffs& c, const Poly& d) {
  if (d.is_constant()) {
    Rational inv = 1 / d.constant_value();
    Coeffs out = c;
    for (auto& p : out) p *= inv;
    return out;
  }
  Coeffs out;
  out.reserve(c.size());
  for (const auto& p : c) out.push_back(*p.divide_exact(d));
  return out;
}

Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
  const Poly& lb = b.back();
  int db = deg(b);
  while (deg(a) >= db) {
    Poly la = a.back();
    int shift = deg(a) - db;
    for (auto& p : a) p *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

// Gcd of two polynomials primitive in v, both of positive degree in v.
Poly primitive_gcd(VarId v, Coeffs a, Coeffs b) {
  if (deg(a) < deg(b)) std::swap(a, b);
  while (true) {
    Coeffs r = pseudo_remainder(a, b);
    if (r.empty()) return Poly::from_coefficients_in(v, b);
    if (deg(r) == 0) return Poly(1);
    r = divide_all(r, content_of(r));
    a = std::move(b);
    b = std::move(r);
  }
}

// Arithmetic modulo the Mersenne prime 2^61 - 1 for degree certificates.
constexpr std::uint64_t kPrime = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kPrime), hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t r = lo + hi;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::optional<std::uint64_t> reduce(const Rational& q) {
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (d == 0) return std::nullopt;
  return mulmod(n, invmod(d));
}

using ModPoly = std::vector<std::uint64_t>;

void trim_mod(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Image of `a` in F_p[v] after substituting `pt` for every other variable.
std::optional<ModPoly> specialize(const Poly& a, VarId v, const std::vector<std::uint64_t>& pt) {
  ModPoly out(a.degree_in(v) + 1, 0);
  for (const auto& t : a.terms()) {
    auto c = reduce(t.coeff);
    if (!c) return std::nullopt;
    std::uint64_t val = *c;
    for (VarId w = 0; w < kMaxVars; ++w) {
      int e = t.mono.exponent(w);
      if (e == 0 || w == v) continue;
      val = mulmod(val, powmod(pt[w], e));
    }
    auto& slot = out[t.mono.exponent(v)];
    slot += val;
    if (slot >= kPrime) slot -= kPrime;
  }
  return out;
}

int mod_gcd_degree(ModPoly a, ModPoly b) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t f = mulmod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t s = mulmod(f, b[i]);
        a[i + shift] = a[i + shift] >= s ? a[i + shift] - s : a[i + shift] + kPrime - s;
      }
      trim_mod(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Upper bound on deg_v gcd(a, b), or -1 if no certificate was obtained.
int gcd_degree_bound(const Poly& a, const Poly& b, VarId v) {
  std::uint64_t state = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(v);
  int da = a.degree_in(v), db = b.degree_in(v);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<std::uint64_t> pt(kMaxVars);
    for (auto& x : pt) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      x = (state >> 3) % kPrime;
    }
    auto fa = specialize(a, v, pt), fb = specialize(b, v, pt);
    if (!fa || !fb) return -1;
    trim_mod(*fa);
    trim_mod(*fb);
    if (static_cast<int>(fa->size()) - 1 != da || static_cast<int>(fb->size()) - 1 != db) continue;
    return mod_gcd_degree(std::move(*fa), std::move(*fb));
  }
  return -1;
}

Poly gcd_nonzero(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();

  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (small.total_degree() <= large.total_degree() && large.divide_exact(small)) return small.monic();

  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  if (!ma.is_one() || !mb.is_one()) {
    Monomial mg = Monomial::gcd(ma, mb);
    Poly ra = *a.divide_exact(Poly::monomial(ma, 1));
    Poly rb = *b.divide_exact(Poly::monomial(mb, 1));
    return gcd_nonzero(ra, rb).mul_monomial(mg, 1).monic();
  }

  auto va = a.variables(), vb = b.variables();
  for (VarId v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_of(a.coefficients_in(v)), b);
  for (VarId v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_of(b.coefficients_in(v)));

  for (VarId v : va)
    if (gcd_degree_bound(a, b, v) == 0)
      return gcd(content_of(a.coefficients_in(v)), content_of(b.coefficients_in(v)));

  VarId main = va.front();
  int best = a.degree_in(main) + b.degree_in(main);
  for (VarId v : va) {
    int d = a.degree_in(v) + b.degree_in(v);
    if (d < best) {
      best = d;
      main = v;
    }
  }
  Coeffs ca = a.coefficients_in(main), cb = b.coefficients_in(main);
  Poly conta = content_of(ca), contb = content_of(cb);
  Poly cont = gcd(conta, contb);
  Poly pp = primitive_gcd(main, divide_all(ca, conta), divide_all(cb, contb));
  return (cont * pp).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  return gcd_nonzero(a, b);
}

}  // namespace feff
