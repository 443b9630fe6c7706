#include "cfdim/errors.hpp"
#include "cfdim/numerics/rational.hpp"

#include <doctest.h>

using cfdim::BigInt;
using cfdim::ExactRational;

TEST_CASE("rational parse forms")
{
    CHECK(ExactRational::parse("2/5") == ExactRational(2, 5));
    CHECK(ExactRational::parse("4/10") == ExactRational(2, 5));
    CHECK(ExactRational::parse("0.55") == ExactRational(11, 20));
    CHECK(ExactRational::parse("-1.25") == ExactRational(-5, 4));
    CHECK(ExactRational::parse("1e-3") == ExactRational(1, 1000));
    CHECK(ExactRational::parse("2.5E2") == ExactRational(250));
    CHECK(ExactRational::parse("7") == ExactRational(7));
    CHECK_THROWS_AS(ExactRational::parse("1/0"), cfdim::DomainError);
    CHECK_THROWS_AS(ExactRational::parse("abc"), cfdim::DomainError);
    CHECK_THROWS_AS(ExactRational::parse(""), cfdim::DomainError);
}

TEST_CASE("rational normalization and ordering")
{
    const ExactRational x(BigInt(6), BigInt(-4));
    CHECK(x.numerator() == -3);
    CHECK(x.denominator() == 2);
    CHECK(x < ExactRational(0));
    CHECK(x.floor() == -2);
    CHECK(x.ceil() == -1);
    CHECK(ExactRational(7, 2).floor() == 3);
    CHECK(mediant(ExactRational(1, 2), ExactRational(2, 3)) == ExactRational(3, 5));
}

TEST_CASE("rational decimal rendering")
{
    CHECK(ExactRational(1, 3).to_decimal(5) == "0.33333");
    CHECK(ExactRational(2, 3).to_decimal(3) == "0.667");
    CHECK(ExactRational(-1, 8).to_decimal(2) == "-0.13");
    CHECK(ExactRational(1).to_decimal(0) == "1");
    CHECK(ExactRational(1, 2).to_decimal(4) == "0.5000");
}
