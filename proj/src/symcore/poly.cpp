#include "feff/symcore/poly.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "feff/errors.hpp"

namespace feff {

namespace {

std::atomic<int> g_degree_cap{40};

inline int shift_of(VarId v) { return v < 8 ? (7 - v) * 8 : (15 - v) * 8; }

inline int byte_sum(std::uint64_t w) {
  // Sum of the eight bytes; no byte exceeds 255 and the total fits in the top byte.
  w = (w & 0x00FF00FF00FF00FFull) + ((w >> 8) & 0x00FF00FF00FF00FFull);
  w = (w & 0x0000FFFF0000FFFFull) + ((w >> 16) & 0x0000FFFF0000FFFFull);
  w = (w & 0x00000000FFFFFFFFull) + (w >> 32);
  return static_cast<int>(w);
}

inline bool term_greater(const Poly::Term& a, const Poly::Term& b) { return grlex_greater(a.mono, b.mono); }

}  // namespace

int Monomial::exponent(VarId v) const {
  std::uint64_t w = v < 8 ? hi : lo;
  return static_cast<int>((w >> shift_of(v)) & 0xFF);
}

void Monomial::set_exponent(VarId v, int e) {
  if (e < 0 || e > 255) throw DegreeCapExceeded("exponent out of range: " + std::to_string(e));
  std::uint64_t& w = v < 8 ? hi : lo;
  int s = shift_of(v);
  w = (w & ~(0xFFull << s)) | (static_cast<std::uint64_t>(e) << s);
}

int Monomial::degree() const { return byte_sum(hi) + byte_sum(lo); }

Monomial Monomial::var(VarId v, int e) {
  Monomial m;
  m.set_exponent(v, e);
  return m;
}

bool Monomial::divides(Monomial other) const {
  for (VarId v = 0; v < kMaxVars; ++v)
    if (exponent(v) > other.exponent(v)) return false;
  return true;
}

Monomial Monomial::quotient_of(Monomial other) const { return {other.hi - hi, other.lo - lo}; }

Monomial Monomial::gcd(Monomial a, Monomial b) {
  Monomial r;
  for (VarId v = 0; v < kMaxVars; ++v) r.set_exponent(v, std::min(a.exponent(v), b.exponent(v)));
  return r;
}

bool grlex_greater(Monomial a, Monomial b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  if (a.hi != b.hi) return a.hi > b.hi;
  return a.lo > b.lo;
}

int degree_cap() { return g_degree_cap.load(); }

void set_degree_cap(int cap) {
  if (cap < 1 || cap > 255) throw DomainError("degree cap must lie in [1, 255]");
  g_degree_cap.store(cap);
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::var(VarId v) { return monomial(Monomial::var(v), Rational(1)); }

Poly Poly::monomial(Monomial m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff == 0; });
  return p;
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant: " + str());
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

int Poly::degree_in(VarId v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

std::vector<VarId> Poly::variables() const {
  Monomial acc;
  for (const auto& t : terms_) {
    acc.hi |= t.mono.hi;
    acc.lo |= t.mono.lo;
  }
  std::vector<VarId> out;
  for (VarId v = 0; v < kMaxVars; ++v)
    if (acc.exponent(v) != 0) out.push_back(v);
  return out;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

template <bool Subtract>
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, Subtract ? Rational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rational c = Subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  int deg = a.total_degree() + b.total_degree();
  if (deg > degree_cap())
    throw DegreeCapExceeded("product of total degree " + std::to_string(deg) + " exceeds cap " +
                            std::to_string(degree_cap()));
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  Rational prod;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      mpq_mul(prod.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
      acc[s.mono * t.mono] += prod;
    }
  Poly r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Poly Poly::mul_monomial(Monomial m, const Rational& c) const {
  if (c == 0 || is_zero()) return {};
  int deg = total_degree() + m.degree();
  if (deg > degree_cap())
    throw DegreeCapExceeded("product of total degree " + std::to_string(deg) + " exceeds cap " +
                            std::to_string(degree_cap()));
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw DomainError("negative exponent on polynomial");
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(VarId v) const {
  Poly r;
  for (const auto& t : terms_) {
    int e = t.mono.exponent(v);
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set_exponent(v, e - 1);
    r.terms_.push_back({m, t.coeff * e});
  }
  // Lowering one exponent by one preserves the relative grlex order of distinct terms.
  return r;
}

Rational Poly::evaluate(std::span<const Rational> values) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational prod = t.coeff;
    for (VarId v = 0; v < kMaxVars; ++v) {
      int e = t.mono.exponent(v);
      if (e == 0) continue;
      if (static_cast<std::size_t>(v) >= values.size())
        throw DomainError("no value supplied for " + var_name(v));
      for (int k = 0; k < e; ++k) prod *= values[v];
    }
    sum += prod;
  }
  return sum;
}

std::vector<Poly> Poly::coefficients_in(VarId v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    int e = m.exponent(v);
    m.set_exponent(v, 0);
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Poly p;
    p.terms_ = std::move(b);
    std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
    out.push_back(std::move(p));
  }
  return out;
}

Poly Poly::from_coefficients_in(VarId v, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) {
      Monomial m = t.mono;
      m.set_exponent(v, m.exponent(v) + static_cast<int>(k));
      all.push_back({m, t.coeff});
    }
  return from_terms(std::move(all));
}

Poly Poly::substitute(VarId v, const Poly& s) const {
  auto cs = coefficients_in(v);
  Poly r;
  for (std::size_t k = cs.size(); k-- > 0;) {
    r = r * s + cs[k];
  }
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  if (is_zero()) return Poly{};
  const Term& ld = d.leading();
  if (d.size() == 1) {
    Poly q;
    q.terms_.reserve(terms_.size());
    Rational inv = 1 / ld.coeff;
    for (const auto& t : terms_) {
      if (!ld.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({ld.mono.quotient_of(t.mono), t.coeff * inv});
    }
    return q;
  }
  std::vector<Term> qt;
  Poly r = *this;
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!ld.mono.divides(lr.mono)) return std::nullopt;
    if (lr.mono.degree() < ld.mono.degree()) return std::nullopt;
    Monomial qm = ld.mono.quotient_of(lr.mono);
    Rational qc = lr.coeff / ld.coeff;
    r -= d.mul_monomial(qm, qc);
    qt.push_back({qm, std::move(qc)});
  }
  Poly q;
  q.terms_ = std::move(qt);  // generated in strictly decreasing order
  return q;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].mono;
  for (const auto& t : terms_) {
    if (g.is_one()) break;
    g = Monomial::gcd(g, t.mono);
  }
  return g;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Poly r = *this;
  if (terms_[0].coeff == 1) return r;
  r *= Rational(1 / terms_[0].coeff);
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    bool one = t.mono.is_one();
    std::string factors;
    for (VarId v = 0; v < kMaxVars; ++v) {
      int e = t.mono.exponent(v);
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += var_name(v);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (one)
      out += c.get_str();
    else if (c == 1)
      out += factors;
    else
      out += c.get_str() + "*" + factors;
  }
  return out;
}

}  // namespace feff
