#pragma once

#include <string>

#include "feff/symcore/matrix.hpp"

namespace feff {

/// a + b*sqrt(2) with a, b in an exact field.
template <class T>
struct QSqrt2 {
  T a{0};
  T b{0};

  QSqrt2() = default;
  QSqrt2(T a_) : a(std::move(a_)), b(0) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(T a_, T b_) : a(std::move(a_)), b(std::move(b_)) {}
  QSqrt2(long c) : a(c), b(0) {}  // NOLINT(google-explicit-constructor)

  static QSqrt2 sqrt2() { return {T(0), T(1)}; }

  QSqrt2& operator+=(const QSqrt2& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  QSqrt2& operator-=(const QSqrt2& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  QSqrt2& operator*=(const QSqrt2& o) {
    T na = a * o.a + T(2) * b * o.b;
    T nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }
  QSqrt2& operator/=(const QSqrt2& o) {
    // (a + b r)/(c + d r) = (a + b r)(c - d r)/(c^2 - 2 d^2)
    T den = o.a * o.a - T(2) * o.b * o.b;
    *this *= QSqrt2(o.a, -o.b);
    a /= den;
    b /= den;
    return *this;
  }
  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
  friend QSqrt2 operator-(const QSqrt2& x) { return {-x.a, -x.b}; }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }

  bool is_zero() const { return feff::is_zero(a) && feff::is_zero(b); }
  std::string str() const;
};

template <class T>
bool is_zero(const QSqrt2<T>& x) {
  return x.is_zero();
}

inline std::string scalar_str(const Rational& q) { return q.get_str(); }
inline std::string scalar_str(const RatFunc& f) { return f.str(); }

template <class T>
std::string QSqrt2<T>::str() const {
  if (feff::is_zero(b)) return scalar_str(a);
  std::string s = feff::is_zero(a) ? "" : "(" + scalar_str(a) + ") + ";
  return s + "(" + scalar_str(b) + ")*sqrt2";
}

template <class T>
std::size_t pivot_weight(const QSqrt2<T>& x) {
  return pivot_weight(x.a) + pivot_weight(x.b);
}

}  // namespace feff
