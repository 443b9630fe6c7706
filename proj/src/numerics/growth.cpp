#include "cfdim/numerics/growth.hpp"

#include "cfdim/detail/overloaded.hpp"
#include "cfdim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cfdim {

using detail::overloaded;

namespace {

// Extra bits so that exp(y) keeps relative accuracy when |y| ~ magnitude.
long guard_for(double magnitude)
{
    return 16 + (magnitude > 1.0 ? static_cast<long>(std::ceil(std::log2(magnitude))) : 0);
}

BigReal checked(BigReal v, const char* what)
{
    if (mpfr_inf_p(v.upper().get()) || mpfr_inf_p(v.lower().get()))
        throw DomainError(std::string(what) + ": value overflows the exponent range");
    return v;
}

double approx_log2(const BigInt& n)
{
    long exp2 = 0;
    const double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log2(m) + static_cast<double>(exp2);
}

} // namespace

BigReal power(const BigInt& n, const ExactRational& gamma, long precision)
{
    if (n < 0) throw DomainError("power of a negative base");
    if (n == 0) {
        if (gamma.sign() <= 0) throw DomainError("0^gamma needs gamma > 0");
        return BigReal::exact(0, precision);
    }
    if (n == 1) return BigReal::exact(1, precision);
    if (gamma.is_integer() && gamma.numerator().fits_slong_p() && gamma.sign() >= 0 &&
        approx_log2(n) * gamma.to_double() < 1e6) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), gamma.numerator().get_ui());
        return BigReal::exact(r, precision);
    }
    const long work = precision + 8;
    return pow(BigReal::exact(n, work), BigReal::exact(gamma, work));
}

BigReal eval_psi(const PsiFunction& psi, const BigInt& x, long precision)
{
    return std::visit(overloaded{
                          [&](const PsiInvLog&) {
                              const long w = precision + 8;
                              return BigReal::exact(1, w) / log(BigReal::exact(x, w) + const_e(w));
                          },
                          [&](const PsiConstant& c) { return BigReal::exact(c.value, precision); },
                      },
                      psi);
}

std::string to_string(const PsiFunction& psi)
{
    return std::visit(overloaded{
                          [](const PsiInvLog&) { return std::string("invlog"); },
                          [](const PsiConstant& c) { return "const:" + c.value.to_string(); },
                      },
                      psi);
}

PsiFunction parse_psi(const std::string& text)
{
    if (text == "invlog") return PsiInvLog{};
    if (text.rfind("const:", 0) == 0) {
        const ExactRational v = ExactRational::parse(text.substr(6));
        if (v.sign() <= 0) throw DomainError("psi constant must be positive");
        return PsiConstant{v};
    }
    throw DomainError("unknown psi '" + text + "' (expected invlog or const:<c>)");
}

BigReal eval_growth(const GrowthFunction& phi, const BigInt& n, long precision)
{
    if (n < 1) throw DomainError("growth function evaluated at n < 1");
    return std::visit(
        overloaded{
            [&](const ExpPower& f) {
                if (f.gamma.sign() <= 0) throw DomainError("exp-power needs gamma > 0");
                const double mag = std::exp2(approx_log2(n) * f.gamma.to_double());
                const long w = precision + guard_for(mag);
                return checked(exp(power(n, f.gamma, w)), "exp(n^gamma)");
            },
            [&](const ExpSqrtPsi& f) {
                const long w = precision + guard_for(std::sqrt(n.get_d()) + 1.0);
                return checked(exp(sqrt(BigReal::exact(n, w)) * eval_psi(f.psi, n, w)), "exp(sqrt(n) psi(n))");
            },
            [&](const ExpGeometric& f) {
                if (f.gamma <= ExactRational(1)) throw DomainError("exp-geom needs gamma > 1");
                if (!n.fits_slong_p()) throw DomainError("exp(gamma^n): n too large");
                const double mag = std::exp2(n.get_d() * std::log2(f.gamma.to_double()));
                if (!std::isfinite(mag)) throw DomainError("exp(gamma^n): value overflows the exponent range");
                const long w = precision + guard_for(mag);
                const BigReal g = BigReal::exact(f.gamma, w);
                return checked(exp(pow(g, n.get_si())), "exp(gamma^n)");
            },
            [&](const Polynomial& f) {
                if (f.gamma.sign() <= 0) throw DomainError("poly needs gamma > 0");
                return power(n, f.gamma, precision + 8);
            },
            [&](const Linear& f) {
                if (f.gamma.sign() <= 0) throw DomainError("linear needs gamma > 0");
                return BigReal::exact(f.gamma * ExactRational(n), precision + 8);
            },
        },
        phi);
}

GrowthFunction parse_growth(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("growth function needs family:parameter, got '" + text + "'");
    const std::string family = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    if (family == "exp-sqrt-psi") return ExpSqrtPsi{parse_psi(arg)};
    const ExactRational g = ExactRational::parse(arg);
    if (g.sign() <= 0) throw DomainError("growth parameter must be positive");
    if (family == "exp-power") return ExpPower{g};
    if (family == "exp-geom") {
        if (g <= ExactRational(1)) throw DomainError("exp-geom needs gamma > 1");
        return ExpGeometric{g};
    }
    if (family == "poly") return Polynomial{g};
    if (family == "linear") return Linear{g};
    throw DomainError("unknown growth family '" + family + "'");
}

std::string to_string(const GrowthFunction& phi)
{
    return std::visit(overloaded{
                          [](const ExpPower& f) { return "exp-power:" + f.gamma.to_string(); },
                          [](const ExpSqrtPsi& f) { return "exp-sqrt-psi:" + to_string(f.psi); },
                          [](const ExpGeometric& f) { return "exp-geom:" + f.gamma.to_string(); },
                          [](const Polynomial& f) { return "poly:" + f.gamma.to_string(); },
                          [](const Linear& f) { return "linear:" + f.gamma.to_string(); },
                      },
                      phi);
}

} // namespace cfdim
