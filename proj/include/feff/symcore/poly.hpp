#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "feff/symcore/rational.hpp"
#include "feff/symcore/variables.hpp"

namespace feff {

/// Exponent vector over the fixed variable universe, 8 bits per variable.
/// Variable 0 occupies the most significant byte so that integer comparison
/// of (hi, lo) is lexicographic comparison of exponent vectors.
struct Monomial {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  int exponent(VarId v) const;
  void set_exponent(VarId v, int e);
  int degree() const;
  bool is_one() const { return hi == 0 && lo == 0; }

  static Monomial var(VarId v, int e = 1);

  friend Monomial operator*(Monomial a, Monomial b) { return {a.hi + b.hi, a.lo + b.lo}; }
  friend bool operator==(Monomial a, Monomial b) = default;
  bool divides(Monomial other) const;
  /// Requires divides(other).
  Monomial quotient_of(Monomial other) const;
  /// Componentwise minimum.
  static Monomial gcd(Monomial a, Monomial b);
};

/// Graded-lex order: true iff a > b.
bool grlex_greater(Monomial a, Monomial b);

struct MonomialHash {
  std::size_t operator()(Monomial m) const noexcept {
    return std::hash<std::uint64_t>{}(m.hi * 0x9E3779B97F4A7C15ull ^ m.lo);
  }
};

/// Global cap on the total degree of any product term. Default 40.
int degree_cap();
void set_degree_cap(int cap);

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted in decreasing graded-lex order with no zero coefficients.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(VarId v);
  static Poly monomial(Monomial m, const Rational& c);
  /// Builds from unsorted terms, combining duplicates.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  int total_degree() const;
  int degree_in(VarId v) const;
  bool depends_on(VarId v) const { return degree_in(v) > 0; }
  /// Variables with a positive exponent somewhere, ascending.
  std::vector<VarId> variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly mul_monomial(Monomial m, const Rational& c) const;
  Poly pow(int e) const;
  Poly derivative(VarId v) const;
  /// Substitutes rational values; variables absent from `values` are left symbolic
  /// unless `values` covers them. Index = VarId.
  Rational evaluate(std::span<const Rational> values) const;
  /// Replaces variable v by the polynomial s.
  Poly substitute(VarId v, const Poly& s) const;

  /// Exact quotient if `divisor` divides *this, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& divisor) const;
  /// Gcd of the monomials of all terms.
  Monomial monomial_content() const;
  /// Scales so that the leading coefficient is 1.
  Poly monic() const;

  /// Coefficients with respect to v: index k holds the coefficient of v^k.
  std::vector<Poly> coefficients_in(VarId v) const;
  static Poly from_coefficients_in(VarId v, const std::vector<Poly>& coeffs);

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

/// Monic greatest common divisor (zero only if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace feff
