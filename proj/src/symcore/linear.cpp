#include "feff/symcore/linear.hpp"

#include <functional>
#include <map>
#include <unordered_map>

namespace feff {

namespace {

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  Poly g = gcd(a, b);
  return *(a * b).divide_exact(g);
}

}  // namespace

QMatrix q_linear_relations(const std::vector<std::vector<RatFunc>>& cols) {
  if (cols.empty()) return QMatrix(0, 0);
  const std::size_t len = cols[0].size();
  Poly L(1);
  for (const auto& c : cols) {
    if (c.size() != len) throw DomainError("q_linear_relations: vectors of different length");
    for (const auto& f : c)
      if (!f.is_zero()) L = lcm(L, f.den());
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> rows;  // (component, monomial id)
  std::unordered_map<Monomial, std::size_t, MonomialHash> mono_id;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t r = 0; r < len; ++r) {
      const RatFunc& f = cols[k][r];
      if (f.is_zero()) continue;
      Poly p = f.num() * *L.divide_exact(f.den());
      for (const auto& t : p.terms()) {
        auto [it, fresh] = mono_id.try_emplace(t.mono, mono_id.size());
        auto [rit, rfresh] = rows.try_emplace({r, it->second}, rows.size());
        entries[k].emplace_back(rit->second, t.coeff);
      }
    }
  QMatrix A(rows.size(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (const auto& [r, c] : entries[k]) A(r, k) += c;
  return A.nullspace();
}

std::size_t q_linear_rank(const std::vector<std::vector<RatFunc>>& cols) {
  return cols.size() - q_linear_relations(cols).cols();
}

std::vector<Poly> monomials_up_to(const std::vector<VarId>& vars, int degree) {
  std::vector<Poly> out;
  std::function<void(std::size_t, int, Poly)> rec = [&](std::size_t k, int left, Poly p) {
    if (k == vars.size()) {
      out.push_back(std::move(p));
      return;
    }
    Poly q = p;
    for (int d = 0; d <= left; ++d) {
      rec(k + 1, left - d, q);
      q *= Poly::var(vars[k]);
    }
  };
  rec(0, degree, Poly(Rational(1)));
  return out;
}

}  // namespace feff
