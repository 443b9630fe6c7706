#include "cfdim/numerics/rational.hpp"

#include "cfdim/errors.hpp"

#include <cmath>
#include <string>

namespace cfdim {

ExactRational::ExactRational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

ExactRational& ExactRational::operator/=(const ExactRational& o)
{
    if (o.q_ == 0) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole)
{
    if (s.empty()) throw DomainError("malformed number: '" + std::string(whole) + "'");
    BigInt v;
    if (v.set_str(std::string(s), 10) != 0)
        throw DomainError("malformed number: '" + std::string(whole) + "'");
    return v;
}

} // namespace

ExactRational ExactRational::parse(std::string_view text)
{
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty number");

    if (const auto slash = text.find('/'); slash != std::string_view::npos)
        return {parse_integer(text.substr(0, slash), whole), parse_integer(text.substr(slash + 1), whole)};

    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        const BigInt ex = parse_integer(text.substr(e + 1), whole);
        if (!ex.fits_slong_p()) throw DomainError("exponent out of range: '" + std::string(whole) + "'");
        exponent = ex.get_si();
        text = text.substr(0, e);
    }

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string digits;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
        exponent -= static_cast<long>(text.size() - dot - 1);
    } else {
        digits = std::string(text);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("malformed number: '" + std::string(whole) + "'");

    BigInt mant(digits, 10);
    if (negative) mant = -mant;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    return exponent >= 0 ? ExactRational(BigInt(mant * scale)) : ExactRational(mant, scale);
}

ExactRational ExactRational::from_double(double value)
{
    if (!std::isfinite(value)) throw DomainError("non-finite double");
    return ExactRational(mpq_class(value));
}

BigInt ExactRational::floor() const
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

BigInt ExactRational::ceil() const
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string ExactRational::to_decimal(int digits) const
{
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round half away from zero on |x| * 10^digits
    mpq_class scaled = abs(q_) * scale + mpq_class(1, 2);
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    std::string s = r.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(q_) < 0 && r != 0) s.insert(0, "-");
    return s;
}

ExactRational abs(const ExactRational& x)
{
    return x.sign() < 0 ? -x : x;
}

ExactRational mediant(const ExactRational& a, const ExactRational& b)
{
    return {a.numerator() + b.numerator(), a.denominator() + b.denominator()};
}

} // namespace cfdim
