#include "cfdim/errors.hpp"
#include "cfdim/numerics/growth.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfdim;

TEST_CASE("growth function examples")
{
    const BigReal a = eval_growth(ExpPower{ExactRational(1)}, 2, 64);
    CHECK(a.center_double() == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    const BigReal b = eval_growth(ExpPower{ExactRational(1, 2)}, 4, 64);
    CHECK(compare(a, b) == Cmp::overlap);
    const BigReal c = eval_growth(ExpGeometric{ExactRational(2)}, 3, 64);
    CHECK(c.center_double() == doctest::Approx(std::exp(8.0)).epsilon(1e-15));
    CHECK(c.center_double() == doctest::Approx(2980.958).epsilon(1e-6));
}

TEST_CASE("growth relative radius bound")
{
    const std::vector<GrowthFunction> families = {
        ExpPower{ExactRational(3, 5)}, ExpPower{ExactRational(1)}, ExpSqrtPsi{PsiInvLog{}},
        ExpGeometric{ExactRational(3, 2)}, Polynomial{ExactRational(3, 2)}, Linear{ExactRational(2)}};
    for (const auto& phi : families) {
        for (long n : {1L, 2L, 10L, 40L, 100L, 1000L}) {
            if (std::holds_alternative<ExpGeometric>(phi) && n > 40) continue;
            for (long p : {64L, 200L}) {
                const BigReal v = eval_growth(phi, n, p);
                CHECK(v.relative_radius() <= std::ldexp(1.0, -p + 8));
            }
        }
    }
}

TEST_CASE("growth families are increasing on sampled n")
{
    const std::vector<GrowthFunction> families = {
        ExpPower{ExactRational(2, 5)}, ExpSqrtPsi{PsiInvLog{}}, ExpSqrtPsi{PsiConstant{ExactRational(1, 2)}},
        ExpGeometric{ExactRational(2)}, Polynomial{ExactRational(1, 3)}, Linear{ExactRational(1, 7)}};
    for (const auto& phi : families) {
        BigReal prev = eval_growth(phi, 1, 64);
        const long top = std::holds_alternative<ExpGeometric>(phi) ? 25 : 300;
        for (long n = 2; n <= top; n += (n < 30 ? 1 : 17)) {
            const BigReal cur = eval_growth(phi, n, 64);
            CHECK_MESSAGE(certainly_less(prev, cur), to_string(phi) << " at n=" << n);
            prev = cur;
        }
    }
}

TEST_CASE("growth parsing round trips and rejects bad input")
{
    for (const char* s : {"exp-power:3/5", "exp-sqrt-psi:invlog", "exp-geom:2", "poly:3/2", "linear:1",
                          "exp-sqrt-psi:const:1/2"})
        CHECK(to_string(parse_growth(s)) == s);
    CHECK(to_string(parse_growth("exp-power:0.6")) == "exp-power:3/5");
    CHECK_THROWS_AS(parse_growth("exp-geom:1"), DomainError);
    CHECK_THROWS_AS(parse_growth("exp-power:-1"), DomainError);
    CHECK_THROWS_AS(parse_growth("bogus:1"), DomainError);
    CHECK_THROWS_AS(eval_growth(ExpPower{ExactRational(1)}, 0, 64), DomainError);
    // exp(2^200) does not fit the floating exponent range
    CHECK_THROWS_AS(eval_growth(ExpGeometric{ExactRational(2)}, 200, 64), DomainError);
}

TEST_CASE("large exp-power values keep relative accuracy")
{
    const BigReal v = eval_growth(ExpPower{ExactRational(1)}, 1000, 128);
    CHECK(v.relative_radius() <= std::ldexp(1.0, -120));
}
