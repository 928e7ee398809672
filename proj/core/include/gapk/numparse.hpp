// Parser for the integer expressions used on the command line: decimal
// literals, powers a^b, primorials n#, parenthesized products written by
// juxtaposition, and sums/differences. Examples: "2^127-1", "14789586(5#)",
// "4365(3#)(2^127-1)".

#pragma once

#include "gapk/natural.hpp"

#include <stdexcept>
#include <string>

namespace gapk {

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ExprError on malformed input or absurd magnitudes (exponents beyond
// 10^7, primorial arguments beyond 10^6).
Integer parse_integer_expr(const std::string& text);

// As above but rejects negative results.
Natural parse_natural_expr(const std::string& text);

}  // namespace gapk
