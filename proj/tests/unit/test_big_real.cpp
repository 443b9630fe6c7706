#include "cfdim/errors.hpp"
#include "cfdim/numerics/big_real.hpp"
#include "cfdim/numerics/certified.hpp"
#include "cfdim/numerics/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfdim;

namespace {

ExactRational random_rational(Engine& rng)
{
    const BigInt num = uniform_integer(rng, BigInt(-100000), BigInt(100000));
    const BigInt den = uniform_integer(rng, BigInt(1), BigInt(100000));
    return {num, den};
}

} // namespace

TEST_CASE("interval soundness on random rationals")
{
    Engine rng(7);
    for (int i = 0; i < 2000; ++i) {
        const ExactRational a = random_rational(rng);
        ExactRational b = random_rational(rng);
        if (b.sign() == 0) b = ExactRational(1, 3);
        const long p = 40 + i % 100;
        const BigReal ar = BigReal::exact(a, p);
        const BigReal br = BigReal::exact(b, p);
        CHECK((ar + br).contains(a + b));
        CHECK((ar - br).contains(a - b));
        CHECK((ar * br).contains(a * b));
        CHECK((ar / br).contains(a / b));
        CHECK((-ar).contains(-a));
    }
}

TEST_CASE("transcendental enclosures contain double references")
{
    const BigReal two = BigReal::exact(2, 64);
    CHECK(std::abs(exp(two).center_double() - std::exp(2.0)) < 1e-14);
    CHECK(std::abs(log(two).center_double() - std::log(2.0)) < 1e-15);
    CHECK(std::abs(const_pi(80).center_double() - M_PI) < 1e-15);
    CHECK(exp(two).radius_double() < 1e-15);
    CHECK_THROWS_AS(log(BigReal::exact(0, 64)), DomainError);
    CHECK_THROWS_AS(two / BigReal::ball(ExactRational(0), ExactRational(1, 10)), DomainError);
}

TEST_CASE("comparison is three-valued")
{
    const BigReal a = BigReal::exact(ExactRational(1, 3), 64);
    const BigReal b = BigReal::exact(ExactRational(1, 2), 64);
    CHECK(compare(a, b) == Cmp::less);
    CHECK(compare(b, a) == Cmp::greater);
    CHECK(compare(a, a) == Cmp::overlap);
}

TEST_CASE("certified floor examples")
{
    auto e_at = [](long p) { return const_e(p); };
    CHECK(certified_floor(e_at, PrecisionSchedule{64, 8192}) == 2);
    auto e_squared = [](long p) { return exp(sqrt(BigReal::exact(4, p))); };
    CHECK(certified_floor(e_squared) == 7);
    CHECK(certified_floor(ExactRational(3)) == 3);
    CHECK(certified_floor(BigReal::exact(3, 64)) == 3);
}

TEST_CASE("certified floor escalates near integers and gives up on exact boundaries")
{
    // 5 + 2^-300: ambiguous at 128 bits, decided later
    ExactRational near(BigInt(5));
    BigInt tiny = 1;
    tiny <<= 300;
    near += ExactRational(BigInt(1), tiny);
    auto f = [&](long p) { return BigReal::exact(near, p); };
    CHECK(certified_floor(f) == 5);
    auto minus = [&](long p) { return BigReal::exact(ExactRational(10) - near, p); };
    CHECK(certified_floor(minus) == 4);

    // an integer reached only through an inexact route
    auto boundary = [](long p) { return exp(log(BigReal::exact(3, p))); };
    CHECK_THROWS_AS(certified_floor(boundary, PrecisionSchedule{128, 1024}), PrecisionExhausted);
}

TEST_CASE("certified floor agrees with exact floor on random rationals")
{
    Engine rng(11);
    for (int i = 0; i < 10000; ++i) {
        const BigInt num = uniform_integer(rng, BigInt(-1000000000), BigInt(1000000000));
        const BigInt den = uniform_integer(rng, BigInt(1), BigInt(1000));
        const ExactRational q(num, den);
        auto prod = [&](long p) { return BigReal::exact(q, p); };
        REQUIRE(certified_floor(prod) == q.floor());
    }
}

TEST_CASE("uniform integers stay in range and seeds derive deterministically")
{
    Engine rng(3);
    for (int i = 0; i < 1000; ++i) {
        const BigInt v = uniform_integer(rng, BigInt(10), BigInt(13));
        CHECK(v >= 10);
        CHECK(v <= 13);
    }
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
