#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace cfdim {

// Owning handle for an mpfr_t.
class Mpfr {
public:
    explicit Mpfr(long precision = 128) { mpfr_init2(v_, clamp(precision)); mpfr_set_zero(v_, 1); }
    Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mpfr(Mpfr&& o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Decimal rendering with `digits` significant digits, round-to-nearest.
    std::string to_string(int digits) const;

    static mpfr_prec_t clamp(long precision)
    {
        return precision < MPFR_PREC_MIN ? MPFR_PREC_MIN : static_cast<mpfr_prec_t>(precision);
    }

private:
    mpfr_t v_;
};

} // namespace cfdim
