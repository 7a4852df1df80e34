#pragma once

#include <gmpxx.h>

#include <string>

namespace feff {

/// Exact rational number; GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace feff
