#include "cfdim/numerics/zeta.hpp"

#include "cfdim/errors.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace cfdim {

namespace {

// c_n = B_n / n!, from sum_{k=0}^{n} c_k / (n+1-k)! = 0 for n >= 1.
class BernoulliCache {
public:
    ExactRational even(int j)
    {
        std::scoped_lock lock(mutex_);
        const std::size_t need = static_cast<std::size_t>(2 * j);
        if (c_.empty()) {
            c_.emplace_back(1);
            inv_fact_.emplace_back(1);
            inv_fact_.emplace_back(1);
        }
        while (c_.size() <= need) {
            const std::size_t n = c_.size();
            while (inv_fact_.size() <= n + 1)
                inv_fact_.push_back(inv_fact_.back() / ExactRational(static_cast<long>(inv_fact_.size())));
            ExactRational acc;
            for (std::size_t k = 0; k < n; ++k) {
                if (k > 1 && (k & 1U)) continue;  // odd Bernoulli numbers vanish beyond B_1
                acc += c_[k] * inv_fact_[n + 1 - k];
            }
            c_.push_back(-acc);
        }
        return c_[need];
    }

private:
    std::mutex mutex_;
    std::vector<ExactRational> c_;
    std::vector<ExactRational> inv_fact_;
};

BernoulliCache& bernoulli_cache()
{
    static BernoulliCache cache;
    return cache;
}

// base^(-t) for a point t; correctly rounded endpoints.
BigReal int_pow_neg(const BigInt& base, const Mpfr& neg_t, long prec)
{
    Mpfr b(prec);
    mpfr_set_z(b.get(), base.get_mpz_t(), MPFR_RNDN);  // exact when base fits prec
    Mpfr lo(prec), hi(prec);
    if (mpfr_cmp_z(b.get(), base.get_mpz_t()) == 0) {
        mpfr_pow(lo.get(), b.get(), neg_t.get(), MPFR_RNDD);
        mpfr_pow(hi.get(), b.get(), neg_t.get(), MPFR_RNDU);
        return BigReal::from_bounds(std::move(lo), std::move(hi));
    }
    BigReal t = BigReal::from_bounds(neg_t, neg_t);
    return pow(BigReal::exact(base, prec), t);
}

BigReal hurwitz_point(const Mpfr& t, const BigInt& a, long precision)
{
    // absolute radius target relative to the size of the pole term
    Mpfr tm1(t.precision() + 8);
    mpfr_sub_ui(tm1.get(), t.get(), 1, MPFR_RNDD);
    const double pole_bits = std::max(0.0, -std::log2(mpfr_get_d(tm1.get(), MPFR_RNDD)));
    const long work = precision + 24 + static_cast<long>(pole_bits);

    Mpfr neg_t(std::max(work, t.precision()));
    mpfr_neg(neg_t.get(), t.get(), MPFR_RNDN);  // exact
    const BigReal tr = BigReal::from_bounds(t, t).with_precision(std::max(work, t.precision()));
    const BigReal one = BigReal::exact(1, work);
    const BigReal two_pi = BigReal::exact(2, work) * const_pi(work);

    BigReal target(work);
    {
        Mpfr v(work);
        mpfr_set_ui_2exp(v.get(), 1, -(precision - 2), MPFR_RNDD);
        target = BigReal::from_bounds(v, v);
    }

    long terms = std::max<long>(8, precision / 6 + 4);
    for (int attempt = 0; attempt < 12; ++attempt, terms *= 2) {
        const long n_terms = terms;
        const long m_terms = terms;
        const BigInt x = a + n_terms;
        const BigReal xr = BigReal::exact(x, work);

        // remainder bound 4 (t)_{2M} / (2 pi)^{2M} * x^{1-t-2M} / (t + 2M - 1)
        BigReal rising = one;
        for (long k = 0; k < 2 * m_terms; ++k) rising = rising * (tr + BigReal::exact(k, work));
        const BigReal x_neg_t = int_pow_neg(x, neg_t, work);
        const BigReal bound = BigReal::exact(4, work) * rising / pow(two_pi, 2 * m_terms) * x_neg_t *
                              pow(xr, 1 - 2 * m_terms) / (tr + BigReal::exact(2 * m_terms - 1, work));
        if (!certainly_less(bound, target)) continue;

        BigReal sum(work);
        for (long k = 0; k < n_terms; ++k) sum = sum + int_pow_neg(a + k, neg_t, work);
        sum = sum + x_neg_t * xr / (tr - one);
        sum = sum + x_neg_t / BigReal::exact(2, work);

        BigReal fall = tr;        // (t)_{2j-1}
        BigReal power = x_neg_t / xr;  // x^{-t-2j+1}
        const BigReal x2 = xr * xr;
        for (long j = 1; j <= m_terms; ++j) {
            if (j > 1) {
                fall = fall * (tr + BigReal::exact(2 * j - 3, work)) * (tr + BigReal::exact(2 * j - 2, work));
                power = power / x2;
            }
            sum = sum + BigReal::exact(bernoulli_over_factorial(static_cast<int>(j)), work) * fall * power;
        }
        const Mpfr r = bound.upper();
        Mpfr lo(work), hi(work);
        mpfr_sub(lo.get(), sum.lower().get(), r.get(), MPFR_RNDD);
        mpfr_add(hi.get(), sum.upper().get(), r.get(), MPFR_RNDU);
        return BigReal::from_bounds(std::move(lo), std::move(hi));
    }
    throw PrecisionExhausted("zeta: Euler-Maclaurin term budget exhausted");
}

void require_above_one(const BigReal& t)
{
    if (mpfr_cmp_ui(t.lower().get(), 1) <= 0)
        throw DomainError("zeta(t) requires t > 1 (pole at 1); got t ~ " + t.to_string());
}

} // namespace

ExactRational bernoulli_over_factorial(int j)
{
    if (j < 1) throw DomainError("bernoulli index must be >= 1");
    return bernoulli_cache().even(j);
}

BigReal hurwitz_zeta(const BigReal& t, const BigInt& a, long precision)
{
    require_above_one(t);
    if (a < 1) throw DomainError("hurwitz offset must be >= 1");
    if (precision < 32) precision = 32;
    if (t.is_point()) return hurwitz_point(t.lower(), a, precision);
    // decreasing in t
    const BigReal at_hi = hurwitz_point(t.upper(), a, precision);
    const BigReal at_lo = hurwitz_point(t.lower(), a, precision);
    return BigReal::from_bounds(at_hi.lower(), at_lo.upper());
}

BigReal zeta(const BigReal& t, long precision)
{
    return hurwitz_zeta(t, BigInt(1), precision);
}

BigReal zeta(const ExactRational& t, long precision)
{
    const BigReal tr = BigReal::exact(t, std::max<long>(precision + 32, 64));
    return zeta(tr, precision);
}

} // namespace cfdim
