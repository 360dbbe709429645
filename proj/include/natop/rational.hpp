#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace natop {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

/// Renders as "p/q" (denominator always present, q > 0).
std::string to_ratio_string(const Rational& value);

/// Accepts "p", "p/q", optionally signed. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace natop
