#pragma once

#include <span>
#include <string>
#include <string_view>

#include "feff/symcore/ratfunc.hpp"

namespace feff {

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | base ('^' nonneg-int)?
//   base   := integer | identifier | '(' expr ')'
// Identifiers must appear in `allowed`; errors carry the character offset.
RatFunc parse_expr(std::string_view text, std::span<const VarId> allowed);

/// Parses with every variable of the universe allowed.
RatFunc parse_expr(std::string_view text);

}  // namespace feff
