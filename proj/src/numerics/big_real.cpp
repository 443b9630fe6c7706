#include "cfdim/numerics/big_real.hpp"

#include "cfdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cfdim {

std::string Mpfr::to_string(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

namespace {

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// f increasing on the enclosure.
BigReal monotone_up(const BigReal& x, UnaryFn f)
{
    const long p = x.precision();
    Mpfr lo(p), hi(p);
    f(lo.get(), x.lower().get(), MPFR_RNDD);
    f(hi.get(), x.upper().get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

} // namespace

BigReal::BigReal(long precision) : lo_(precision), hi_(precision), prec_(precision) {}

BigReal BigReal::exact(long value, long precision)
{
    BigReal r(precision);
    mpfr_set_si(r.lo_.get(), value, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), value, MPFR_RNDU);
    return r;
}

BigReal BigReal::exact(const BigInt& value, long precision)
{
    BigReal r(precision);
    mpfr_set_z(r.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
    return r;
}

BigReal BigReal::exact(const ExactRational& value, long precision)
{
    BigReal r(precision);
    mpfr_set_q(r.lo_.get(), value.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), value.raw().get_mpq_t(), MPFR_RNDU);
    return r;
}

BigReal BigReal::exact_double(double value, long precision)
{
    if (!std::isfinite(value)) throw DomainError("non-finite double");
    BigReal r(precision);
    mpfr_set_d(r.lo_.get(), value, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), value, MPFR_RNDU);
    return r;
}

BigReal BigReal::from_bounds(Mpfr lower, Mpfr upper)
{
    if (mpfr_nan_p(lower.get()) || mpfr_nan_p(upper.get()))
        throw DomainError("enclosure with NaN endpoint");
    if (mpfr_greater_p(lower.get(), upper.get())) throw DomainError("enclosure with lower > upper");
    BigReal r(std::max(lower.precision(), upper.precision()));
    r.lo_ = std::move(lower);
    r.hi_ = std::move(upper);
    return r;
}

BigReal BigReal::ball(const ExactRational& center, const ExactRational& radius, long precision)
{
    if (radius.sign() < 0) throw DomainError("negative radius");
    BigReal r(precision);
    const ExactRational lo = center - radius;
    const ExactRational hi = center + radius;
    mpfr_set_q(r.lo_.get(), lo.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.raw().get_mpq_t(), MPFR_RNDU);
    return r;
}

Mpfr BigReal::center() const
{
    Mpfr c(prec_ + 2);
    mpfr_add(c.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(c.get(), c.get(), 1, MPFR_RNDN);
    return c;
}

Mpfr BigReal::radius() const
{
    Mpfr r(prec_);
    mpfr_sub(r.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
    return r;
}

double BigReal::radius_double() const
{
    return mpfr_get_d(radius().get(), MPFR_RNDU);
}

double BigReal::relative_radius() const
{
    if (contains_zero()) return std::numeric_limits<double>::infinity();
    Mpfr mag(prec_);
    mpfr_min(mag.get(), lo_.get(), hi_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo_.get()) < 0) mpfr_neg(mag.get(), hi_.get(), MPFR_RNDD);
    Mpfr rel(prec_);
    mpfr_div(rel.get(), radius().get(), mag.get(), MPFR_RNDU);
    return mpfr_get_d(rel.get(), MPFR_RNDU);
}

bool BigReal::contains(const ExactRational& x) const
{
    return mpfr_cmp_q(lo_.get(), x.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.raw().get_mpq_t()) >= 0;
}

bool BigReal::contains(const BigReal& x) const
{
    return mpfr_lessequal_p(lo_.get(), x.lo_.get()) && mpfr_greaterequal_p(hi_.get(), x.hi_.get());
}

bool BigReal::contains_zero() const
{
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool BigReal::is_point() const
{
    return mpfr_equal_p(lo_.get(), hi_.get()) != 0;
}

BigReal BigReal::with_precision(long precision) const
{
    BigReal r(precision);
    mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

BigReal operator+(const BigReal& a, const BigReal& b)
{
    const long p = std::max(a.precision(), b.precision());
    Mpfr lo(p), hi(p);
    mpfr_add(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal operator-(const BigReal& a, const BigReal& b)
{
    const long p = std::max(a.precision(), b.precision());
    Mpfr lo(p), hi(p);
    mpfr_sub(lo.get(), a.lower().get(), b.upper().get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.upper().get(), b.lower().get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal operator-(const BigReal& a)
{
    Mpfr lo(a.precision()), hi(a.precision());
    mpfr_neg(lo.get(), a.upper().get(), MPFR_RNDD);
    mpfr_neg(hi.get(), a.lower().get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal operator*(const BigReal& a, const BigReal& b)
{
    const long p = std::max(a.precision(), b.precision());
    Mpfr lo(p), hi(p);
    if (mpfr_sgn(a.lower().get()) >= 0 && mpfr_sgn(b.lower().get()) >= 0) {
        mpfr_mul(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
        mpfr_mul(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
        return BigReal::from_bounds(std::move(lo), std::move(hi));
    }
    mpfr_srcptr as[2] = {a.lower().get(), a.upper().get()};
    mpfr_srcptr bs[2] = {b.lower().get(), b.upper().get()};
    Mpfr t(p);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal operator/(const BigReal& a, const BigReal& b)
{
    if (b.contains_zero()) throw DomainError("division by an enclosure containing zero");
    const long p = std::max(a.precision(), b.precision());
    // quotient is monotone in each argument away from b = 0: extremes sit at endpoint pairs
    Mpfr lo(p), hi(p), t(p);
    bool first = true;
    for (const Mpfr* x : {&a.lower(), &a.upper()})
        for (const Mpfr* y : {&b.lower(), &b.upper()}) {
            mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal exp(const BigReal& x) { return monotone_up(x, mpfr_exp); }
BigReal expm1(const BigReal& x) { return monotone_up(x, mpfr_expm1); }

BigReal log(const BigReal& x)
{
    if (!x.certainly_positive()) throw DomainError("log of an enclosure not bounded away from zero");
    return monotone_up(x, mpfr_log);
}

BigReal sqrt(const BigReal& x)
{
    if (mpfr_sgn(x.lower().get()) < 0) throw DomainError("sqrt of a possibly negative enclosure");
    return monotone_up(x, mpfr_sqrt);
}

BigReal pow(const BigReal& x, const BigReal& y)
{
    if (!x.certainly_positive()) throw DomainError("pow base not bounded away from zero");
    if (x.is_point() && mpfr_cmp_ui(x.lower().get(), 1) == 0) return BigReal::exact(1, x.precision());
    return exp(y * log(x));
}

BigReal pow(const BigReal& x, long n)
{
    if (n == 0) return BigReal::exact(1, x.precision());
    if (mpfr_sgn(x.lower().get()) < 0) throw DomainError("integer power of a possibly negative enclosure");
    if (n < 0 && !x.certainly_positive()) throw DomainError("negative power of an enclosure touching zero");
    const long p = x.precision();
    Mpfr lo(p), hi(p);
    if (n > 0) {
        mpfr_pow_si(lo.get(), x.lower().get(), n, MPFR_RNDD);
        mpfr_pow_si(hi.get(), x.upper().get(), n, MPFR_RNDU);
    } else {
        mpfr_pow_si(lo.get(), x.upper().get(), n, MPFR_RNDD);
        mpfr_pow_si(hi.get(), x.lower().get(), n, MPFR_RNDU);
    }
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal abs(const BigReal& x)
{
    if (mpfr_sgn(x.lower().get()) >= 0) return x;
    if (mpfr_sgn(x.upper().get()) <= 0) return -x;
    Mpfr lo(x.precision()), hi(x.precision());
    mpfr_set_zero(lo.get(), 1);
    mpfr_neg(hi.get(), x.lower().get(), MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), x.upper().get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal hull(const BigReal& a, const BigReal& b)
{
    const long p = std::max(a.precision(), b.precision());
    Mpfr lo(p), hi(p);
    mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal const_pi(long precision)
{
    Mpfr lo(precision), hi(precision);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return BigReal::from_bounds(std::move(lo), std::move(hi));
}

BigReal const_e(long precision)
{
    return exp(BigReal::exact(1, precision));
}

Cmp compare(const BigReal& a, const BigReal& b)
{
    if (mpfr_less_p(a.upper().get(), b.lower().get())) return Cmp::less;
    if (mpfr_greater_p(a.lower().get(), b.upper().get())) return Cmp::greater;
    return Cmp::overlap;
}

} // namespace cfdim
