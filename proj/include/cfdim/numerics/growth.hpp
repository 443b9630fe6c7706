#pragma once

#include "cfdim/numerics/big_real.hpp"

#include <string>
#include <variant>

namespace cfdim {

// psi used by exp(sqrt(n) psi(n)) and as the slack sequence eps_k = psi(k).
struct PsiInvLog {};            // 1 / ln(x + e)
struct PsiConstant { ExactRational value; };

using PsiFunction = std::variant<PsiInvLog, PsiConstant>;

BigReal eval_psi(const PsiFunction& psi, const BigInt& x, long precision = kDefaultPrecision);
std::string to_string(const PsiFunction& psi);
PsiFunction parse_psi(const std::string& text);

// Normalising sequences phi(n).
struct ExpPower { ExactRational gamma; };        // exp(n^gamma)
struct ExpSqrtPsi { PsiFunction psi; };          // exp(sqrt(n) psi(n))
struct ExpGeometric { ExactRational gamma; };    // exp(gamma^n)
struct Polynomial { ExactRational gamma; };      // n^gamma
struct Linear { ExactRational gamma; };          // gamma n

using GrowthFunction = std::variant<ExpPower, ExpSqrtPsi, ExpGeometric, Polynomial, Linear>;

// Certified enclosure of phi(n) with relative radius <= 2^(-precision + 8).
// DomainError for n < 1 or parameters outside the family.
BigReal eval_growth(const GrowthFunction& phi, const BigInt& n, long precision = kDefaultPrecision);
inline BigReal eval_growth(const GrowthFunction& phi, long n, long precision = kDefaultPrecision)
{
    return eval_growth(phi, BigInt(n), precision);
}

// CLI vocabulary: exp-power:0.6, exp-sqrt-psi:invlog, exp-geom:2, poly:1.5, linear:2.
GrowthFunction parse_growth(const std::string& text);
std::string to_string(const GrowthFunction& phi);

// n^gamma for a rational exponent.
BigReal power(const BigInt& n, const ExactRational& gamma, long precision);

} // namespace cfdim
