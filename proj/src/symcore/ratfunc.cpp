#include "feff/symcore/ratfunc.hpp"

#include <algorithm>

#include "feff/errors.hpp"

namespace feff {

namespace {

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ConsistencyError("inexact division during rational-function reduction");
  return std::move(*q);
}

}  // namespace

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("division by the zero polynomial");
  canonicalize();
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    if (den_.is_monomial()) {
      Monomial g = Monomial::gcd(num_.monomial_content(), den_.leading().mono);
      if (!g.is_one()) {
        Poly gm = Poly::monomial(g, 1);
        num_ = exact(num_, gm);
        den_ = exact(den_, gm);
      }
    } else {
      Poly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = exact(num_, g);
        den_ = exact(den_, g);
      }
    }
  }
  const Rational& lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant: " + str());
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) canonicalize();
    else if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    // both monic constants means both are 1
    num_ += o.num_;
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly d1 = exact(den_, g), d2 = exact(o.den_, g);
  num_ = num_ * d2 + o.num_ * d1;
  den_ = d1 * o.den_;
  canonicalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
  if (!d2.is_constant()) {
    Poly g = gcd(n1, d2);
    if (!g.is_constant()) {
      n1 = exact(n1, g);
      d2 = exact(d2, g);
    }
  }
  if (!d1.is_constant()) {
    Poly g = gcd(n2, d1);
    if (!g.is_constant()) {
      n2 = exact(n2, g);
      d1 = exact(d1, g);
    }
  }
  num_ = n1 * n2;
  den_ = d1 * d2;
  const Rational& lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DomainError("division by the zero polynomial");
  RatFunc inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  const Rational& lc = inv.den_.leading().coeff;
  if (lc != 1) {
    Rational s = 1 / lc;
    inv.num_ *= s;
    inv.den_ *= s;
  }
  return *this *= inv;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) {
    if (is_zero()) throw DomainError("division by the zero polynomial");
    return (RatFunc(1) / *this).pow(-e);
  }
  RatFunc r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

RatFunc RatFunc::derivative(VarId v) const {
  Poly dn = num_.derivative(v);
  if (den_.is_constant()) {
    RatFunc r;
    r.num_ = std::move(dn);
    return r;
  }
  Poly dd = den_.derivative(v);
  if (dd.is_zero()) return RatFunc(dn, den_);
  // (n/d)' = (n' d - n d') / d^2; first cancel the part of d shared with d'.
  Poly g = gcd(den_, dd);
  Poly dg = exact(den_, g), ddg = exact(dd, g);
  return RatFunc(dn * dg - num_ * ddg, den_ * dg);
}

Rational RatFunc::evaluate(std::span<const Rational> values) const {
  Rational d = den_.evaluate(values);
  if (d == 0) throw DomainError("denominator vanishes at evaluation point");
  return num_.evaluate(values) / d;
}

RatFunc RatFunc::substitute(VarId v, const RatFunc& s) const {
  auto sub = [&](const Poly& p) {
    auto cs = p.coefficients_in(v);
    RatFunc r;
    for (std::size_t k = cs.size(); k-- > 0;) r = r * s + RatFunc(cs[k]);
    return r;
  };
  return sub(num_) / sub(den_);
}

std::vector<VarId> RatFunc::variables() const {
  auto a = num_.variables(), b = den_.variables();
  std::vector<VarId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string RatFunc::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace feff
