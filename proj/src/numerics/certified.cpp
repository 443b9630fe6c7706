#include "cfdim/numerics/certified.hpp"

#include "cfdim/errors.hpp"

#include <string>

namespace cfdim {

std::vector<long> PrecisionSchedule::steps() const
{
    std::vector<long> out;
    for (long p = start_bits; p <= max_bits; p *= 2) out.push_back(p);
    if (out.empty() || out.back() != max_bits) out.push_back(max_bits);
    return out;
}

bool try_floor(const BigReal& x, BigInt& out)
{
    BigInt lo, hi;
    mpfr_get_z(lo.get_mpz_t(), x.lower().get(), MPFR_RNDD);
    mpfr_get_z(hi.get_mpz_t(), x.upper().get(), MPFR_RNDD);
    if (lo != hi) return false;
    out = lo;
    return true;
}

BigInt certified_floor(const BigReal& x)
{
    BigInt r;
    if (!try_floor(x, r))
        throw PrecisionExhausted("floor undecided: enclosure around " + x.to_string() + " straddles an integer");
    return r;
}

BigInt certified_floor(const RealProducer& x, const PrecisionSchedule& schedule)
{
    BigInt r;
    for (long p : schedule.steps())
        if (try_floor(x(p), r)) return r;
    throw PrecisionExhausted("floor undecided after " + std::to_string(schedule.max_bits) +
                             " bits; value is an integer boundary or the schedule is too short");
}

int certified_sign(const RealProducer& x, const PrecisionSchedule& schedule)
{
    for (long p : schedule.steps()) {
        const BigReal v = x(p);
        if (v.certainly_positive()) return 1;
        if (v.certainly_negative()) return -1;
    }
    throw PrecisionExhausted("sign undecided after " + std::to_string(schedule.max_bits) + " bits");
}

bool certified_less(const RealProducer& a, const RealProducer& b, const PrecisionSchedule& schedule)
{
    for (long p : schedule.steps()) {
        const Cmp c = compare(a(p), b(p));
        if (c != Cmp::overlap) return c == Cmp::less;
    }
    throw PrecisionExhausted("comparison undecided after " + std::to_string(schedule.max_bits) + " bits");
}

} // namespace cfdim
