#pragma once

#include "cfdim/numerics/mpfr.hpp"
#include "cfdim/numerics/rational.hpp"

#include <string>

namespace cfdim {

inline constexpr long kDefaultPrecision = 128;

// Real number known only through an enclosure [lower, upper]. Every
// operation rounds its endpoints outward, so the exact result of an
// operation on any points of the operand enclosures lies in the result.
//
// The center/radius view is derived from the endpoints.
class BigReal {
public:
    explicit BigReal(long precision = kDefaultPrecision);

    static BigReal exact(long value, long precision = kDefaultPrecision);
    static BigReal exact(const BigInt& value, long precision = kDefaultPrecision);
    static BigReal exact(const ExactRational& value, long precision = kDefaultPrecision);
    static BigReal exact_double(double value, long precision = kDefaultPrecision);
    static BigReal from_bounds(Mpfr lower, Mpfr upper);
    // Enclosure of [center - radius, center + radius].
    static BigReal ball(const ExactRational& center, const ExactRational& radius,
                        long precision = kDefaultPrecision);

    const Mpfr& lower() const { return lo_; }
    const Mpfr& upper() const { return hi_; }
    long precision() const { return prec_; }

    Mpfr center() const;
    Mpfr radius() const;
    double center_double() const { return center().to_double(); }
    double radius_double() const;
    // radius / |center|; infinity when the enclosure touches zero.
    double relative_radius() const;

    bool contains(const ExactRational& x) const;
    bool contains(const BigReal& x) const;
    bool contains_zero() const;
    bool is_point() const;
    bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

    std::string to_string(int digits = 17) const { return center().to_string(digits); }

    // Same enclosure carried at a different working precision (outward).
    BigReal with_precision(long precision) const;

private:
    Mpfr lo_;
    Mpfr hi_;
    long prec_;
};

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a);

BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sqrt(const BigReal& x);
// x^y for x > 0.
BigReal pow(const BigReal& x, const BigReal& y);
// x^n for x >= 0 (x > 0 when n < 0).
BigReal pow(const BigReal& x, long n);
BigReal abs(const BigReal& x);
BigReal hull(const BigReal& a, const BigReal& b);

BigReal const_pi(long precision);
BigReal const_e(long precision);

enum class Cmp { less, greater, overlap };

Cmp compare(const BigReal& a, const BigReal& b);
inline bool certainly_less(const BigReal& a, const BigReal& b) { return compare(a, b) == Cmp::less; }
inline bool certainly_greater(const BigReal& a, const BigReal& b) { return compare(a, b) == Cmp::greater; }

} // namespace cfdim
