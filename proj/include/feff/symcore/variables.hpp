#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace feff {

// Fixed variable universe shared by every polynomial:
//   slots 0..4   x1..x5   base coordinates
//   slots 5..9   p1..p5   fiber coordinates (the covector xi)
//   slots 10..15 u1..u6   auxiliary parameters
inline constexpr int kMaxVars = 16;
inline constexpr int kMaxBaseDim = 5;
inline constexpr int kMaxAux = 6;

using VarId = int;

inline VarId x_var(int i) { return i - 1; }                // x_i, 1-based
inline VarId p_var(int i) { return kMaxBaseDim + i - 1; }  // p_i, 1-based
inline VarId u_var(int i) { return 2 * kMaxBaseDim + i - 1; }

std::string var_name(VarId v);
std::optional<VarId> var_from_name(std::string_view name);

/// x1..xn.
std::vector<VarId> base_vars(int n);
/// x1..xn, p1..pn.
std::vector<VarId> chart_vars(int n);

}  // namespace feff
