#pragma once

#include "cfdim/numerics/big_real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfdim {

enum class Subsequence {
    PowerGamma,       // n_k = k^{1/gamma}
    SquareOverL,      // n_k = k^2 / L^2, the gamma = 1/2 scheme
    LargestQuotient,  // n_k = k^{1/gamma} (log k)^{1/gamma^2}
};
std::string to_string(Subsequence s);
Subsequence parse_subsequence(const std::string& text);  // power-gamma | square-over-l | largest-quotient

struct CoverScheme {
    ExactRational gamma{3, 4};
    ExactRational eps{1, 10};  // window slack; needs 0 < eps < (e-1)/(e+1)
    Subsequence subsequence = Subsequence::PowerGamma;
    ExactRational L{10};  // SquareOverL only
    ExactRational s{3, 5};
    long k_max = 200;
};

void validate(const CoverScheme& scheme);

struct CoverRow {
    long ell = 0;
    long n = 0;          // rounded n_ell (0 for the real-valued L scheme)
    double delta = 0;    // block length n_ell - n_{ell-1}
    BigReal log_factor;  // log of the ell-th factor
    BigReal log_product; // running sum
};

struct CoverSumResult {
    std::vector<CoverRow> rows;
    bool bounded_trend = false;  // last 20% of log factors all negative
    // first ell after which every computed factor is below 1; none if the last is not
    std::optional<long> crossover;
    // where the smooth (unrounded) increment turns negative for good, scanned up to 1e9
    std::optional<double> projected_crossover;
};

// Factors r1 e^l C(s)^{D_l} r2^{2s} e^{-2 s l} of the cover-sum bound with
// C(s) = (9/2)(2 + zeta(2s)), r1 = 2 eps (1 - 1/e), r2 = (e - 1 - eps e - eps)/e.
// The verdict is a finite-depth heuristic, not a proof of boundedness.
CoverSumResult cover_sum_terms(const CoverScheme& scheme, long precision = kDefaultPrecision);

BigReal cover_r1(const ExactRational& eps, long precision);
BigReal cover_r2(const ExactRational& eps, long precision);

struct SLRoot {
    ExactRational lo;  // f(lo) > 0
    ExactRational hi;  // f(hi) < 0
    ExactRational L;
    double value() const { return ((lo + hi) / ExactRational(2)).to_double(); }
    ExactRational width() const { return hi - lo; }
};

// Root in (1/2, 1) of f(s) = log((9/2)(2 + zeta(2s))) - (2s - 1) L / 2 by
// certified bisection on dyadic points down to width 2^-bits. NoRoot when f has
// no sign change on [1/2 + 2^-40, 1 - 2^-40].
SLRoot solve_sL(const ExactRational& L, long bits = 40);

// f evaluated as an enclosure.
BigReal sL_function(const ExactRational& L, const ExactRational& s, long precision);

} // namespace cfdim
