#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace cfdim {

using BigInt = mpz_class;

// Exact fraction kept in lowest terms with a positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    ExactRational(const BigInt& value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    ExactRational(const BigInt& num, const BigInt& den);
    explicit ExactRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p/q", integers and finite decimals such as "-0.125" or "1e-3".
    static ExactRational parse(std::string_view text);
    // Exact binary value of a finite double.
    static ExactRational from_double(double value);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    BigInt floor() const;
    BigInt ceil() const;
    double to_double() const { return q_.get_d(); }
    std::string to_string() const { return q_.get_str(); }
    // Rounded decimal with `digits` places after the point.
    std::string to_decimal(int digits) const;

    ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.q_)); }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

ExactRational abs(const ExactRational& x);
ExactRational mediant(const ExactRational& a, const ExactRational& b);

} // namespace cfdim
