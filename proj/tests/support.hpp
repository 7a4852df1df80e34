#pragma once

#include <random>
#include <vector>

#include "feff/symcore/ratfunc.hpp"

namespace testing {

inline feff::Rational random_rational(std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  return feff::rational(num(rng), den(rng));
}

inline feff::Poly random_poly(std::mt19937_64& rng, const std::vector<feff::VarId>& vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1), d(0, max_deg);
  feff::Poly p;
  for (int t = 0; t < terms; ++t) {
    feff::Monomial m;
    int total = d(rng);
    for (int k = 0; k < total; ++k) {
      auto v = vars[pick(rng)];
      m.set_exponent(v, m.exponent(v) + 1);
    }
    p += feff::Poly::monomial(m, random_rational(rng));
  }
  return p;
}

inline std::vector<feff::Rational> random_point(std::mt19937_64& rng) {
  std::vector<feff::Rational> pt(feff::kMaxVars);
  for (auto& q : pt) q = random_rational(rng, 17);
  return pt;
}

}  // namespace testing

#include "feff/symcore/matrix.hpp"

namespace testing {

inline feff::QMatrix random_combo(std::mt19937_64& rng, const std::vector<feff::QMatrix>& basis) {
  feff::QMatrix M(basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) M += b * random_rational(rng, 5);
  return M;
}

}  // namespace testing

namespace feff {
inline bool is_zero_vec(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}
}  // namespace feff
