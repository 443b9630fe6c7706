#pragma once

#include "cfdim/numerics/big_real.hpp"

#include <functional>
#include <vector>

namespace cfdim {

// Working precisions tried in order when a decision is ambiguous:
// start, 2*start, ... up to and including max_bits.
struct PrecisionSchedule {
    long start_bits = 128;
    long max_bits = 8192;

    std::vector<long> steps() const;
};

// Evaluates a quantity at a requested working precision.
using RealProducer = std::function<BigReal(long precision)>;

// Floor of an enclosure if it is unambiguous, i.e. no integer lies in
// (lower, upper].
bool try_floor(const BigReal& x, BigInt& out);

// Exact floor. Re-evaluates at each precision of the schedule until the
// enclosure no longer straddles an integer; PrecisionExhausted otherwise.
BigInt certified_floor(const RealProducer& x, const PrecisionSchedule& schedule = {});
// Single-shot floor of a fixed enclosure.
BigInt certified_floor(const BigReal& x);
inline BigInt certified_floor(const ExactRational& x) { return x.floor(); }

// Sign of a quantity that is known to be non-zero, with escalation.
int certified_sign(const RealProducer& x, const PrecisionSchedule& schedule = {});

// a < b decided with escalation. Equal values exhaust the schedule.
bool certified_less(const RealProducer& a, const RealProducer& b, const PrecisionSchedule& schedule = {});

} // namespace cfdim
