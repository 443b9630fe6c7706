#pragma once

#include "cfdim/cf/digit_word.hpp"
#include "cfdim/numerics/certified.hpp"

#include <optional>

namespace cfdim {

struct Expansion {
    DigitWord word;
    bool terminated = false;  // the rational input ended within the requested depth
};

// First `depth` partial quotients of x in (0,1) under the Gauss map.
// Rationals give their canonical expansion (last digit >= 2) and stop early
// with `terminated` set.
Expansion expand(const ExactRational& x, std::size_t depth);

// Real input: every digit is a certified floor. The whole expansion is
// recomputed at the next precision of the schedule when a digit is
// ambiguous.
Expansion expand(const RealProducer& x, std::size_t depth, const PrecisionSchedule& schedule = {});

// Fixed enclosure: PrecisionExhausted as soon as a digit is ambiguous.
Expansion expand(const BigReal& x, std::size_t depth);

// Partial quotients of numerator/denominator (numerator < denominator) by
// the Euclidean algorithm, at most `limit` of them; leading-word (Lehmer)
// batching keeps the full-size arithmetic to one 2x2 update per ~10 digits.
// Sets `exhausted` when the remainder reached zero within the limit.
std::vector<BigInt> partial_quotients(const BigInt& numerator, const BigInt& denominator, std::size_t limit,
                                      bool* exhausted = nullptr);

} // namespace cfdim
