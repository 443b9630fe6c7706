#include "cfdim/cf/expansion.hpp"

#include "cfdim/errors.hpp"

namespace cfdim {

namespace {

using i128 = __int128;

std::uint64_t leading_bits(const BigInt& x, std::size_t shift)
{
    BigInt t;
    mpz_fdiv_q_2exp(t.get_mpz_t(), x.get_mpz_t(), shift);
    return mpz_get_ui(t.get_mpz_t());
}

// dst = a*u + b*v for signed 64-bit cofactors
void combine(BigInt& dst, i128 a, const BigInt& u, i128 b, const BigInt& v)
{
    mpz_mul_si(dst.get_mpz_t(), u.get_mpz_t(), static_cast<long>(a));
    if (b >= 0)
        mpz_addmul_ui(dst.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(b));
    else
        mpz_submul_ui(dst.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(-b));
}

void check_unit_interval(const BigReal& x)
{
    if (!x.certainly_positive() || !certainly_less(x, BigReal::exact(1, x.precision())))
        throw DomainError("expansion needs 0 < x < 1; got enclosure around " + x.to_string());
}

} // namespace

std::vector<BigInt> partial_quotients(const BigInt& numerator, const BigInt& denominator, std::size_t limit,
                                      bool* exhausted)
{
    std::vector<BigInt> out;
    BigInt u = denominator;
    BigInt v = numerator;
    BigInt q, r, t, w;
    while (out.size() < limit && v != 0) {
        const std::size_t bits = mpz_sizeinbase(u.get_mpz_t(), 2);
        if (bits <= 126) {
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
            out.push_back(q);
            u.swap(v);
            v.swap(r);
            continue;
        }
        // Knuth's Algorithm L on the leading 62 bits: a quotient is accepted
        // only when both extreme cofactor ratios agree on it.
        const std::size_t shift = bits - 62;
        i128 uh = static_cast<i128>(leading_bits(u, shift));
        i128 vh = static_cast<i128>(leading_bits(v, shift));
        i128 a = 1, b = 0, c = 0, d = 1;
        for (;;) {
            if (vh + c == 0 || vh + d == 0) break;
            const i128 q1 = (uh + a) / (vh + c);
            if (q1 != (uh + b) / (vh + d)) break;
            i128 tmp = a - q1 * c;
            a = c;
            c = tmp;
            tmp = b - q1 * d;
            b = d;
            d = tmp;
            tmp = uh - q1 * vh;
            uh = vh;
            vh = tmp;
            out.emplace_back(static_cast<unsigned long>(q1));
        }
        if (b == 0) {
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
            out.push_back(q);
            u.swap(v);
            v.swap(r);
            continue;
        }
        combine(t, a, u, b, v);
        combine(w, c, u, d, v);
        u.swap(t);
        v.swap(w);
    }
    const bool more = out.size() > limit || v != 0;
    if (out.size() > limit) out.resize(limit);
    if (exhausted) *exhausted = !more;
    return out;
}

Expansion expand(const ExactRational& x, std::size_t depth)
{
    if (x.sign() <= 0 || x >= ExactRational(1)) throw DomainError("expansion needs 0 < x < 1; got " + x.to_string());
    if (depth == 0) throw DomainError("expansion depth must be >= 1");
    bool done = false;
    auto q = partial_quotients(x.numerator(), x.denominator(), depth, &done);
    return {DigitWord(std::move(q)), done};
}

Expansion expand(const BigReal& x, std::size_t depth)
{
    check_unit_interval(x);
    if (depth == 0) throw DomainError("expansion depth must be >= 1");
    const long p = x.precision();
    const BigReal one = BigReal::exact(1, p);
    std::vector<BigInt> digits;
    BigReal y = x;
    bool terminated = false;
    while (digits.size() < depth) {
        const BigReal inv = one / y;
        BigInt a;
        if (!try_floor(inv, a))
            throw PrecisionExhausted("digit " + std::to_string(digits.size() + 1) + " undecided at " +
                                     std::to_string(p) + " bits");
        digits.push_back(a);
        y = inv - BigReal::exact(a, p);
        if (y.is_point() && mpfr_zero_p(y.lower().get())) {
            terminated = true;
            break;
        }
    }
    return {DigitWord(std::move(digits)), terminated};
}

Expansion expand(const RealProducer& x, std::size_t depth, const PrecisionSchedule& schedule)
{
    const auto steps = schedule.steps();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const BigReal v = x(steps[i]);
        try {
            return expand(v, depth);
        } catch (const PrecisionExhausted&) {
            if (i + 1 == steps.size()) throw;
        } catch (const DomainError&) {
            // a point near 0 or 1 may only separate at higher precision
            if (i + 1 == steps.size() || (!v.contains_zero() && !v.contains(ExactRational(1)))) throw;
        }
    }
    throw PrecisionExhausted("expansion undecided");
}

} // namespace cfdim
