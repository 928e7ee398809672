#include "gapk/numparse.hpp"

#include "gapk/primality.hpp"

#include <cctype>
#include <string_view>

namespace gapk {

namespace {

constexpr unsigned long kMaxExponent = 10000000;
constexpr unsigned long kMaxPrimorial = 1000000;

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ExprError(what + " at position " + std::to_string(i) + " in \"" + std::string(s) + "\"");
  }

  Natural parse_digits() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected a number");
    return Natural(std::string(s.substr(start, i - start)), 10);
  }

  Integer parse_factor() {
    if (peek() == '(') {
      ++i;
      Integer v = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++i;
      return v;
    }
    Natural base = parse_digits();
    if (peek() == '^') {
      ++i;
      Natural exp = parse_digits();
      if (exp > kMaxExponent) fail("exponent too large");
      return pow_natural(base, to_u64(exp));
    }
    if (peek() == '#') {
      ++i;
      if (base > kMaxPrimorial) fail("primorial argument too large");
      return primorial(to_u64(base));
    }
    return base;
  }

  Integer parse_product() {
    Integer v = parse_factor();
    for (;;) {
      if (peek() == '*') {
        ++i;
        v *= parse_factor();
      } else if (peek() == '(') {
        v *= parse_factor();  // juxtaposition: "3(2#)", "(3#)(2^127-1)"
      } else {
        break;
      }
    }
    return v;
  }

  Integer parse_expr() {
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++i;
    } else if (peek() == '+') {
      ++i;
    }
    Integer v = sign * parse_product();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++i;
        v += parse_product();
      } else if (c == '-') {
        ++i;
        v -= parse_product();
      } else {
        break;
      }
    }
    return v;
  }
};

}  // namespace

Integer parse_integer_expr(const std::string& text) {
  Parser p{text};
  Integer v = p.parse_expr();
  if (!p.eof()) p.fail("unexpected trailing input");
  return v;
}

Natural parse_natural_expr(const std::string& text) {
  Integer v = parse_integer_expr(text);
  if (v < 0) throw ExprError("negative value not allowed: \"" + text + "\"");
  return v;
}

}  // namespace gapk
