#include <doctest.h>

#include "dpa/errors.hpp"
#include "dpa/rational.hpp"

using namespace dpa;

TEST_CASE("parse_rational handles the three exact forms") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("7/8") == Rational(7, 8));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("0.5") == Rational(1, 2));
    CHECK(parse_rational("1.25") == Rational(5, 4));
    CHECK(parse_rational("-0.04") == Rational(-1, 25));
}

TEST_CASE("parse_rational rejects junk") {
    CHECK_THROWS_AS((void)parse_rational(""), ModelError);
    CHECK_THROWS_AS((void)parse_rational("1/0"), ModelError);
    CHECK_THROWS_AS((void)parse_rational("a/2"), ModelError);
    CHECK_THROWS_AS((void)parse_rational("1.2.3"), ModelError);
    CHECK_THROWS_AS((void)parse_rational("1e3"), ModelError);
}

TEST_CASE("string form round-trips exactly") {
    for (const char* s : {"0", "1", "-4", "7/8", "-23/24", "1000000000000000000000/7"}) {
        const Rational q = parse_rational(s);
        CHECK(to_string(q) == s);
        CHECK(parse_rational(to_string(q)) == q);
    }
}

TEST_CASE("to_double is a faithful conversion") {
    CHECK(to_double(Rational(1, 2)) == 0.5);
    CHECK(to_double(Rational(7, 8)) == 0.875);
    const double x = to_double(Rational(1, 3));
    CHECK(x > 0.333333333333);
    CHECK(x < 0.333333333334);
}
