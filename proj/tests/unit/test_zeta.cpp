#include "cfdim/errors.hpp"
#include "cfdim/numerics/zeta.hpp"

#include <doctest.h>

#include <cmath>

using namespace cfdim;

namespace {

// Direct summation of k^-t for k <= terms plus the integral tail bracket
// [(N+1)^(1-t), N^(1-t)] / (t-1). Returns {lower, upper}.
std::pair<double, double> zeta_by_direct_sum(double t, long terms)
{
    long double sum = 0;
    for (long k = terms; k >= 1; --k) sum += std::pow(static_cast<long double>(k), -static_cast<long double>(t));
    const long double lo = sum + std::pow(static_cast<long double>(terms + 1), 1 - t) / (t - 1);
    const long double hi = sum + std::pow(static_cast<long double>(terms), 1 - t) / (t - 1);
    return {static_cast<double>(lo), static_cast<double>(hi)};
}

double mpfr_reference(double t)
{
    Mpfr x(200), z(200);
    mpfr_set_d(x.get(), t, MPFR_RNDN);
    mpfr_zeta(z.get(), x.get(), MPFR_RNDN);
    return z.to_double();
}

} // namespace

TEST_CASE("zeta(2) is pi^2/6 within the requested radius")
{
    const BigReal z = zeta(ExactRational(2), 64);
    const BigReal closed = const_pi(128) * const_pi(128) / BigReal::exact(6, 128);
    CHECK(z.radius_double() <= std::ldexp(1.0, -60));
    CHECK(compare(z, closed) == Cmp::overlap);
    CHECK(z.center_double() == doctest::Approx(1.6449340668482264).epsilon(1e-15));
}

TEST_CASE("zeta matches the direct-summation oracle")
{
    for (double t : {1.5, 3.0}) {
        const auto [lo, hi] = zeta_by_direct_sum(t, 1000000);
        const BigReal z = zeta(ExactRational::from_double(t), 64);
        CHECK(z.center_double() >= lo - 1e-12);
        CHECK(z.center_double() <= hi + 1e-12);
        CHECK(z.radius_double() <= std::ldexp(1.0, -60));
    }
    CHECK(zeta(ExactRational(3, 2), 64).center_double() == doctest::Approx(2.612375348685488).epsilon(1e-15));
    CHECK(zeta(ExactRational(3), 64).center_double() == doctest::Approx(1.2020569031595942).epsilon(1e-15));
}

TEST_CASE("zeta agrees with MPFR's correctly rounded zeta near the pole and beyond")
{
    for (double t : {1.0000001, 1.001, 1.01, 1.02, 1.1, 1.2, 1.8, 2.5, 7.0, 40.0}) {
        const BigReal z = zeta(ExactRational::from_double(t), 96);
        CHECK(z.center_double() == doctest::Approx(mpfr_reference(t)).epsilon(1e-15));
        CHECK(z.radius_double() <= std::ldexp(1.0, -92));
    }
    CHECK(zeta(ExactRational(101, 100), 64).center_double() == doctest::Approx(100.5779433).epsilon(1e-9));
}

TEST_CASE("zeta high precision radius")
{
    const BigReal z = zeta(ExactRational(3), 512);
    Mpfr ref(600), three(600);
    mpfr_set_ui(three.get(), 3, MPFR_RNDN);
    mpfr_zeta(ref.get(), three.get(), MPFR_RNDN);
    CHECK(mpfr_cmp(z.lower().get(), ref.get()) <= 0);
    CHECK(mpfr_cmp(z.upper().get(), ref.get()) >= 0);
    CHECK(z.radius_double() <= std::ldexp(1.0, -508));
}

TEST_CASE("zeta monotone on a grid in (1.05, 4)")
{
    BigReal prev = zeta(ExactRational(105, 100), 64);
    for (int i = 1; i <= 59; ++i) {
        const ExactRational t = ExactRational(105, 100) + ExactRational(i, 20);
        const BigReal cur = zeta(t, 64);
        CHECK(compare(cur, prev) == Cmp::less);
        prev = cur;
    }
}

TEST_CASE("zeta rejects the pole and below")
{
    CHECK_THROWS_AS(zeta(ExactRational(1), 64), DomainError);
    CHECK_THROWS_AS(zeta(ExactRational(1, 2), 64), DomainError);
    CHECK_THROWS_AS(zeta(BigReal::ball(ExactRational(1), ExactRational(1, 100)), 64), DomainError);
}

TEST_CASE("zeta on an enclosure argument contains both endpoint values")
{
    const BigReal t = BigReal::ball(ExactRational(2), ExactRational(1, 1000), 80);
    const BigReal z = zeta(t, 64);
    CHECK(z.contains(zeta(ExactRational(2001, 1000), 64)));
    CHECK(z.contains(zeta(ExactRational(1999, 1000), 64)));
}

TEST_CASE("hurwitz tail plus partial sum is zeta")
{
    const BigReal t = BigReal::exact(3, 128);
    BigReal partial = BigReal::exact(0, 128);
    for (long k = 1; k < 50; ++k) partial = partial + pow(BigReal::exact(k, 128), -3);
    const BigReal total = partial + hurwitz_zeta(t, BigInt(50), 100);
    CHECK(compare(total, zeta(t, 100)) == Cmp::overlap);
}

TEST_CASE("bernoulli ratios")
{
    CHECK(bernoulli_over_factorial(1) == ExactRational(1, 12));    // B2 = 1/6
    CHECK(bernoulli_over_factorial(2) == ExactRational(-1, 720));  // B4 = -1/30
    CHECK(bernoulli_over_factorial(3) == ExactRational(1, 30240)); // B6 = 1/42
}
