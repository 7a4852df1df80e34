#include "feff/symcore/variables.hpp"

#include <charconv>

namespace feff {

std::string var_name(VarId v) {
  if (v < kMaxBaseDim) return "x" + std::to_string(v + 1);
  if (v < 2 * kMaxBaseDim) return "p" + std::to_string(v - kMaxBaseDim + 1);
  return "u" + std::to_string(v - 2 * kMaxBaseDim + 1);
}

std::optional<VarId> var_from_name(std::string_view name) {
  if (name.size() < 2) return std::nullopt;
  int idx = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
  if (ec != std::errc{} || ptr != name.data() + name.size() || idx < 1 || name[1] == '0') return std::nullopt;
  switch (name[0]) {
    case 'x':
      if (idx <= kMaxBaseDim) return x_var(idx);
      break;
    case 'p':
      if (idx <= kMaxBaseDim) return p_var(idx);
      break;
    case 'u':
      if (idx <= kMaxAux) return u_var(idx);
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::vector<VarId> base_vars(int n) {
  std::vector<VarId> out;
  for (int i = 1; i <= n; ++i) out.push_back(x_var(i));
  return out;
}

std::vector<VarId> chart_vars(int n) {
  auto out = base_vars(n);
  for (int i = 1; i <= n; ++i) out.push_back(p_var(i));
  return out;
}

}  // namespace feff
