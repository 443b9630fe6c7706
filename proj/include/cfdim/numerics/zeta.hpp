#pragma once

#include "cfdim/numerics/big_real.hpp"

namespace cfdim {

// Riemann zeta for real t > 1, evaluated by Euler-Maclaurin summation with
// a rigorous remainder enclosure. The result radius is at most
// 2^(-precision + 4) when t is a point; an enclosure t is handled through
// monotonicity. DomainError if t may be <= 1.
BigReal zeta(const BigReal& t, long precision = kDefaultPrecision);
BigReal zeta(const ExactRational& t, long precision = kDefaultPrecision);

// Hurwitz zeta sum_{k>=0} (a + k)^(-t) for an integer offset a >= 1; the
// tail of the Riemann series from index a.
BigReal hurwitz_zeta(const BigReal& t, const BigInt& a, long precision = kDefaultPrecision);

// B_{2j} / (2j)! for j >= 1, exact.
ExactRational bernoulli_over_factorial(int j);

} // namespace cfdim
