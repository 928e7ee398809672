#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gapk/numparse.hpp"
#include "gapk/primality.hpp"

using namespace gapk;

TEST_CASE("plain and signed decimals") {
  CHECK(parse_integer_expr("0") == 0);
  CHECK(parse_integer_expr("12") == 12);
  CHECK(parse_integer_expr("-12") == -12);
  CHECK(parse_integer_expr(" 443687580 ") == 443687580);
  CHECK(parse_natural_expr("903030") == 903030);
}

TEST_CASE("powers") {
  CHECK(parse_integer_expr("2^10") == 1024);
  CHECK(parse_integer_expr("2^127-1") == pow_natural(2, 127) - 1);
  CHECK(parse_integer_expr("2^521-1") == pow_natural(2, 521) - 1);
  CHECK(parse_integer_expr("2^31+1") == pow_natural(2, 31) + 1);
  CHECK(digits10(parse_natural_expr("2^4253-1")) == 1281);
}

TEST_CASE("primorials") {
  CHECK(parse_integer_expr("5#") == 30);
  CHECK(parse_integer_expr("2#") == 2);
  CHECK(parse_integer_expr("11#") == 2310);
  CHECK(parse_integer_expr("10#") == 210);
}

TEST_CASE("products by star and juxtaposition") {
  CHECK(parse_integer_expr("3(2#)") == 6);
  CHECK(parse_integer_expr("14(3#)") == 84);
  CHECK(parse_integer_expr("2087(5#)") == 62610);
  CHECK(parse_integer_expr("14789586(5#)") == 443687580);
  CHECK(parse_integer_expr("156497*(11#)") == 361508070);
  CHECK(parse_integer_expr("2112798(7#)") == 443687580);
  CHECK(parse_integer_expr("7700(5#)") == 231000);
  CHECK(parse_integer_expr("129262(5#)") == 3877860);
  CHECK(parse_integer_expr("4365(3#)(2^127-1)") ==
        Natural(4365) * 6 * (pow_natural(2, 127) - 1));
  CHECK(parse_integer_expr("2*3*5") == 30);
}

TEST_CASE("additive expressions and grouping") {
  CHECK(parse_integer_expr("1+2*3") == 7);
  CHECK(parse_integer_expr("(1+2)*3") == 9);
  CHECK(parse_integer_expr("2^5-2^3") == 24);
  CHECK(parse_integer_expr("-(3#)") == -6);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS((void)parse_integer_expr(""), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("abc"), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("2^"), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("(2"), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("2)"), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("2^99999999"), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("9999999#"), ExprError);
  CHECK_THROWS_AS((void)parse_natural_expr("-5"), ExprError);
  CHECK_THROWS_AS((void)parse_integer_expr("12 34"), ExprError);
}
