#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fdet/jet.hpp"

namespace fdet {

/// Parses polynomial text like "z1^2 + 3*z1*z2 - (1/2)i*z2^3".
///
/// Variables are z1, z2, ... (plain z is z1; x, y, w alias z1, z2, z3).
/// `i` is the imaginary unit and may follow a number or parenthesis
/// directly. Division is allowed by nonzero constants only. With
/// n_vars == 0 the variable count is the largest index that occurs (at least 1).
Jet parse_jet(std::string_view text, std::size_t n_vars, unsigned trunc);

/// Number of variables referenced by the text (at least 1).
std::size_t count_variables(std::string_view text);

}  // namespace fdet
