#pragma once

// ASCII index notation, e.g. "phi^m_i d_m psi_jk - 1/2 psi_mj d_i phi^m_k".
//
// Factor names: phi, S, X (the (1,p) field); psi, Y (the second field);
// K (written K_a^p_b); delta; dim. "d_m" in front of a field is a partial
// derivative. Products may contain parenthesized sums, which distribute.
// Letters listed in `free_letters` are free indices, numbered by their
// position in that string; every other letter is a dummy.

#include <stdexcept>
#include <string>
#include <string_view>

#include "natop/expr.hpp"

namespace natop {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IndexedExpression parse_expression(std::string_view text, std::string_view free_letters);

}  // namespace natop
