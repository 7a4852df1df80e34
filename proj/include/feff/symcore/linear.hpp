#pragma once

#include <vector>

#include "feff/symcore/matrix.hpp"

namespace feff {

/// Q-linear relations among vectors of rational functions: the columns of the result
/// span all c with Σ_k c_k cols[k] = 0.
QMatrix q_linear_relations(const std::vector<std::vector<RatFunc>>& cols);

/// Dimension of the Q-span of the given vectors.
std::size_t q_linear_rank(const std::vector<std::vector<RatFunc>>& cols);

/// All monomials in `vars` of total degree <= degree.
std::vector<Poly> monomials_up_to(const std::vector<VarId>& vars, int degree);

}  // namespace feff
