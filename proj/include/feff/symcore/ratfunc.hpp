#pragma once

#include <span>
#include <string>

#include "feff/symcore/poly.hpp"

namespace feff {

/// Multivariate rational function in canonical form: numerator and denominator
/// coprime, denominator monic in graded-lex order. Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws DomainError if den is the zero polynomial.
  RatFunc(Poly num, Poly den);

  static RatFunc var(VarId v) { return RatFunc(Poly::var(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc pow(int e) const;
  RatFunc derivative(VarId v) const;
  /// Throws DomainError if the denominator vanishes at the point.
  Rational evaluate(std::span<const Rational> values) const;
  RatFunc substitute(VarId v, const RatFunc& s) const;
  std::vector<VarId> variables() const;

  /// Text in the expression grammar; parse(str()) reproduces *this.
  std::string str() const;

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

/// Partial derivative; the named-operation form of RatFunc::derivative.
inline RatFunc differentiate(const RatFunc& f, VarId v) { return f.derivative(v); }
inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace feff
