#pragma once

#include "cfdim/numerics/big_real.hpp"
#include "cfdim/numerics/certified.hpp"

#include <string>
#include <variant>
#include <vector>

namespace cfdim {

// Window bounds c(n) multiplying e^{n^gamma}.
struct BoundConstant { ExactRational value; };
struct BoundIncrementRatio {};        // (e^{n^g} - e^{(n-1)^g}) e^{-n^g}
struct BoundScaledIncrementRatio {};  // (n+1)/n times the increment ratio
struct BoundOneMinusInverse { ExactRational alpha; };  // alpha (1 - 1/n)
struct BoundLowerPlusExpGap { ExactRational rate; };   // c1(n) + e^{-rate n}; upper only

using BoundFn = std::variant<BoundConstant, BoundIncrementRatio, BoundScaledIncrementRatio, BoundOneMinusInverse,
                             BoundLowerPlusExpGap>;

// const:<c>, increment-ratio, scaled-increment-ratio, one-minus-inverse:<alpha>, lower-plus-exp-gap:<rate>
BoundFn parse_bound(const std::string& text);
std::string to_string(const BoundFn& c);

// Admissible digits at index n >= start: integers strictly inside
// (c1(n) e^{n^gamma}, c2(n) e^{n^gamma}).
struct WindowSpec {
    ExactRational gamma{1};
    BoundFn lower = BoundConstant{ExactRational(1)};
    BoundFn upper = BoundConstant{ExactRational(2)};
    long start = 1;
};

void validate(const WindowSpec& spec);

BigReal eval_lower(const WindowSpec& spec, long n, long precision);
BigReal eval_upper(const WindowSpec& spec, long n, long precision);
// c2(n) - c1(n), evaluated without cancellation where the form allows.
BigReal eval_gap(const WindowSpec& spec, long n, long precision);

struct DigitWindow {
    long n = 0;
    BigInt lo;  // inclusive
    BigInt hi;  // inclusive
    BigInt count() const { return hi - lo + 1; }
    bool contains(const BigInt& a) const { return lo <= a && a <= hi; }
};

// Exact admissible range; EmptyWindow when no integer fits.
DigitWindow digit_window(const WindowSpec& spec, long n, const PrecisionSchedule& schedule = {});

// Least n with (c2 - c1) e^{n^gamma} > 1 for constant bounds.
long n_zero(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2);

// Least N with (c2(n) - c1(n)) e^{n^gamma} > 1 for every N <= n <= horizon.
long first_stable_start(const WindowSpec& spec, long horizon);

struct TrendCheck {
    std::string name;
    std::vector<std::pair<long, double>> samples;
    bool pass = false;
};

// The three limit hypotheses for time-varying windows, sampled on n <= horizon:
//   log(c2 - c1) / n^gamma -> 0, liminf log c1 / log n > -inf, limsup log c2 / log n < inf.
// Finite-horizon heuristics only.
struct BAssumptionReport {
    std::vector<TrendCheck> checks;
    bool all_pass() const;
};

BAssumptionReport check_B_assumptions(const WindowSpec& spec, long horizon);

// Window used for the largest-digit sets: c1 = alpha (1 - 1/n), c2 = alpha,
// starting at the least n with (alpha / n) e^{n^gamma} > 1.
WindowSpec f_window_spec(const ExactRational& gamma, const ExactRational& alpha);
// Time-varying window whose digit sums track e^{n^gamma}.
WindowSpec increment_window_spec(const ExactRational& gamma, long horizon);

} // namespace cfdim
