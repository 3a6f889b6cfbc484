#include <catch2/catch_amalgamated.hpp>

#include "ainfty/fields.hpp"

using namespace ainfty;

TEST_CASE("rational arithmetic is exact")
{
    Rational a(2, 3), b(5, 7);
    REQUIRE((a * b) == Rational(10, 21));
    REQUIRE((a + b) == Rational(29, 21));
    REQUIRE((a - a).is_zero());
    REQUIRE(a.inv() == Rational(3, 2));
    REQUIRE((Rational(1, 3) + Rational(1, 3) + Rational(1, 3)) == Rational(1));
}

TEST_CASE("rational serialization round-trips bit-identically")
{
    for (long n = -20; n <= 20; ++n) {
        for (long d = 1; d <= 7; ++d) {
            Rational x(n, d);
            REQUIRE(Rational::from_string(x.str()) == x);
        }
    }
    REQUIRE(Rational::from_string("2/3").str() == "2/3");
    REQUIRE(Rational::from_string("-6/4").str() == "-3/2");
}

TEST_CASE("prime field arithmetic")
{
    PrimeField::set_modulus(7);
    PrimeField a(3), b(5);
    REQUIRE((a * b) == PrimeField(1));
    REQUIRE((a + b) == PrimeField(1));
    REQUIRE(a.inv() * a == PrimeField(1));
    REQUIRE(PrimeField(-1) == PrimeField(6));
    REQUIRE(PrimeField::from_string("3 mod 7") == a);
    REQUIRE(PrimeField(3).str() == "3 mod 7");
    REQUIRE_THROWS_AS(PrimeField::set_modulus(6), ArgumentError);
}
