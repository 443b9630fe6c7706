#include "cfdim/construct/window.hpp"

#include "cfdim/detail/overloaded.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/numerics/growth.hpp"

#include <algorithm>
#include <cmath>

namespace cfdim {

using detail::overloaded;

namespace {

// bits of e^{n^gamma}, used to keep absolute accuracy below one unit
long magnitude_bits(const ExactRational& gamma, long n)
{
    const double e = std::pow(static_cast<double>(n), gamma.to_double()) * 1.4426950408889634;
    return 8 + static_cast<long>(std::ceil(e));
}

BigReal increment_ratio(const ExactRational& gamma, long n, long w)
{
    // 1 - e^{(n-1)^g - n^g}
    return -expm1(power(BigInt(n - 1), gamma, w) - power(BigInt(n), gamma, w));
}

BigReal exp_n_gamma(const ExactRational& gamma, long n, long w)
{
    return eval_growth(ExpPower{gamma}, n, w);
}

ExactRational positive(const std::string& arg, const char* what)
{
    const ExactRational v = ExactRational::parse(arg);
    if (v.sign() <= 0) throw DomainError(std::string(what) + " must be positive");
    return v;
}

} // namespace

BoundFn parse_bound(const std::string& text)
{
    if (text == "increment-ratio") return BoundIncrementRatio{};
    if (text == "scaled-increment-ratio") return BoundScaledIncrementRatio{};
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (colon == std::string::npos) throw DomainError("unknown window bound '" + text + "'");
    const std::string arg = text.substr(colon + 1);
    if (kind == "const") return BoundConstant{positive(arg, "window constant")};
    if (kind == "one-minus-inverse") return BoundOneMinusInverse{positive(arg, "alpha")};
    if (kind == "lower-plus-exp-gap") return BoundLowerPlusExpGap{positive(arg, "gap rate")};
    throw DomainError("unknown window bound '" + text + "'");
}

std::string to_string(const BoundFn& c)
{
    return std::visit(overloaded{
                          [](const BoundConstant& b) { return "const:" + b.value.to_string(); },
                          [](const BoundIncrementRatio&) { return std::string("increment-ratio"); },
                          [](const BoundScaledIncrementRatio&) { return std::string("scaled-increment-ratio"); },
                          [](const BoundOneMinusInverse& b) { return "one-minus-inverse:" + b.alpha.to_string(); },
                          [](const BoundLowerPlusExpGap& b) { return "lower-plus-exp-gap:" + b.rate.to_string(); },
                      },
                      c);
}

void validate(const WindowSpec& spec)
{
    if (spec.gamma.sign() <= 0) throw DomainError("window exponent gamma must be positive");
    if (spec.start < 1) throw DomainError("window start must be >= 1");
    if (std::holds_alternative<BoundLowerPlusExpGap>(spec.lower))
        throw DomainError("lower-plus-exp-gap can only be an upper bound");
    const auto* a = std::get_if<BoundConstant>(&spec.lower);
    const auto* b = std::get_if<BoundConstant>(&spec.upper);
    if (a && b && !(a->value < b->value)) throw DomainError("window needs c1 < c2");
}

namespace {

BigReal eval_bound(const BoundFn& c, const WindowSpec& spec, long n, long w)
{
    if (n < 1) throw DomainError("window index must be >= 1");
    return std::visit(overloaded{
                          [&](const BoundConstant& b) { return BigReal::exact(b.value, w); },
                          [&](const BoundIncrementRatio&) { return increment_ratio(spec.gamma, n, w); },
                          [&](const BoundScaledIncrementRatio&) {
                              return BigReal::exact(ExactRational(n + 1, n), w) * increment_ratio(spec.gamma, n, w);
                          },
                          [&](const BoundOneMinusInverse& b) {
                              return BigReal::exact(b.alpha * (ExactRational(1) - ExactRational(1, n)), w);
                          },
                          [&](const BoundLowerPlusExpGap& b) {
                              return eval_bound(spec.lower, spec, n, w) +
                                     exp(BigReal::exact(-(b.rate * ExactRational(n)), w));
                          },
                      },
                      c);
}

} // namespace

BigReal eval_lower(const WindowSpec& spec, long n, long precision)
{
    return eval_bound(spec.lower, spec, n, precision);
}

BigReal eval_upper(const WindowSpec& spec, long n, long precision)
{
    return eval_bound(spec.upper, spec, n, precision);
}

BigReal eval_gap(const WindowSpec& spec, long n, long precision)
{
    if (const auto* g = std::get_if<BoundLowerPlusExpGap>(&spec.upper))
        return exp(BigReal::exact(-(g->rate * ExactRational(n)), precision));
    if (std::holds_alternative<BoundScaledIncrementRatio>(spec.upper) &&
        std::holds_alternative<BoundIncrementRatio>(spec.lower))
        return increment_ratio(spec.gamma, n, precision) / BigReal::exact(n, precision);
    if (const auto* lo = std::get_if<BoundOneMinusInverse>(&spec.lower))
        if (const auto* up = std::get_if<BoundConstant>(&spec.upper); up && up->value == lo->alpha)
            return BigReal::exact(lo->alpha / ExactRational(n), precision);
    return eval_upper(spec, n, precision) - eval_lower(spec, n, precision);
}

DigitWindow digit_window(const WindowSpec& spec, long n, const PrecisionSchedule& schedule)
{
    validate(spec);
    if (n < spec.start) throw DomainError("digit window requested below the window start");
    const long mag = magnitude_bits(spec.gamma, n);
    const BigInt below = certified_floor(
        [&](long p) { return eval_lower(spec, n, p + mag) * exp_n_gamma(spec.gamma, n, p + mag); }, schedule);
    const BigInt neg_above = certified_floor(
        [&](long p) { return -(eval_upper(spec, n, p + mag) * exp_n_gamma(spec.gamma, n, p + mag)); }, schedule);
    DigitWindow win{n, below + 1, -neg_above - 1};
    if (win.hi < win.lo) throw EmptyWindow("no admissible digit at index " + std::to_string(n), n);
    return win;
}

namespace {

// (c2(n) - c1(n)) e^{n^gamma} > 1, decided with escalation
bool gap_exceeds_one(const WindowSpec& spec, long n)
{
    const long mag = magnitude_bits(spec.gamma, n);
    const RealProducer lhs = [&](long p) {
        return eval_gap(spec, n, p + mag) * exp_n_gamma(spec.gamma, n, p + mag);
    };
    const RealProducer one = [](long p) { return BigReal::exact(1, p); };
    return certified_less(one, lhs);
}

} // namespace

long n_zero(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2)
{
    if (gamma.sign() <= 0) throw DomainError("n_zero needs gamma > 0");
    if (c1.sign() <= 0 || !(c1 < c2)) throw DomainError("n_zero needs 0 < c1 < c2");
    const WindowSpec spec{gamma, BoundConstant{c1}, BoundConstant{c2}, 1};
    if (gap_exceeds_one(spec, 1)) return 1;
    // the predicate is monotone in n
    long lo = 1, hi = 2;
    while (!gap_exceeds_one(spec, hi)) {
        lo = hi;
        if (hi > (1L << 40)) throw DomainError("n_zero beyond 2^40");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (gap_exceeds_one(spec, mid) ? hi : lo) = mid;
    }
    return hi;
}

long first_stable_start(const WindowSpec& spec, long horizon)
{
    validate(spec);
    if (horizon < 1) throw DomainError("horizon must be >= 1");
    long n = horizon;
    if (!gap_exceeds_one(spec, n)) throw EmptyWindow("window too narrow at the horizon " + std::to_string(n), n);
    while (n > 1 && gap_exceeds_one(spec, n - 1)) --n;
    return n;
}

bool BAssumptionReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const TrendCheck& c) { return c.pass; });
}

BAssumptionReport check_B_assumptions(const WindowSpec& spec, long horizon)
{
    validate(spec);
    if (horizon < 10) throw DomainError("assumption check needs horizon >= 10");
    std::vector<long> grid;
    const long first = std::max(spec.start, 10L) <= horizon ? std::max(spec.start, 10L) : horizon;
    for (double x = static_cast<double>(first); x < static_cast<double>(horizon); x *= 1.5) {
        const long n = static_cast<long>(x);
        if (grid.empty() || grid.back() != n) grid.push_back(n);
    }
    if (grid.empty() || grid.back() != horizon) grid.push_back(horizon);

    TrendCheck gap{"log(c2-c1)/n^gamma -> 0", {}, false};
    TrendCheck low{"liminf log c1/log n > -inf", {}, false};
    TrendCheck up{"limsup log c2/log n < inf", {}, false};
    constexpr long p = 128;
    for (long n : grid) {
        const long w = p;
        BigReal g = eval_gap(spec, n, w);
        // cancellation in the generic difference: retry wider
        for (long extra = 2 * w; !g.certainly_positive() && extra <= 1L << 16; extra *= 2)
            g = eval_gap(spec, n, extra);
        const BigReal ng = power(BigInt(n), spec.gamma, w);
        const BigReal ln_n = log(BigReal::exact(n, w));
        gap.samples.emplace_back(n, g.certainly_positive() ? (log(g) / ng).center_double() : -INFINITY);
        const BigReal c1 = eval_lower(spec, n, w);
        const BigReal c2 = eval_upper(spec, n, w);
        low.samples.emplace_back(n, c1.certainly_positive() ? (log(c1) / ln_n).center_double() : -INFINITY);
        up.samples.emplace_back(n, c2.certainly_positive() ? (log(c2) / ln_n).center_double() : -INFINITY);
    }

    const auto& gs = gap.samples;
    const std::size_t half = gs.size() / 2;
    bool shrinking = std::isfinite(gs.back().second);
    for (std::size_t i = half + 1; i < gs.size() && shrinking; ++i)
        shrinking = std::fabs(gs[i].second) <= std::fabs(gs[i - 1].second) + 1e-12;
    gap.pass = std::fabs(gs.back().second) <= 1e-9 ||
               (shrinking && std::fabs(gs.back().second) < std::fabs(gs.front().second));

    // compare the last sample with the one nearest horizon/2
    auto mid_index = [&](const TrendCheck& c) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < c.samples.size(); ++i)
            if (c.samples[i].first <= horizon / 2) best = i;
        return best;
    };
    const std::size_t mi = mid_index(low);
    const double dl = low.samples.back().second - low.samples[mi].second;
    const double du = up.samples.back().second - up.samples[mi].second;
    low.pass = std::isfinite(low.samples.back().second) && dl > -0.5;
    up.pass = std::isfinite(up.samples.back().second) && du < 0.5;
    return {{gap, low, up}};
}

WindowSpec f_window_spec(const ExactRational& gamma, const ExactRational& alpha)
{
    if (alpha.sign() <= 0) throw DomainError("alpha must be positive");
    WindowSpec spec{gamma, BoundOneMinusInverse{alpha}, BoundConstant{alpha}, 1};
    validate(spec);
    // (alpha/n) e^{n^gamma} is increasing once gamma n^gamma > 1
    const double turn = std::pow(1.0 / gamma.to_double(), 1.0 / gamma.to_double());
    const long horizon = std::max(16L, static_cast<long>(std::ceil(2 * turn)) + 16);
    spec.start = first_stable_start(spec, horizon);
    return spec;
}

WindowSpec increment_window_spec(const ExactRational& gamma, long horizon)
{
    WindowSpec spec{gamma, BoundIncrementRatio{}, BoundScaledIncrementRatio{}, 1};
    validate(spec);
    spec.start = first_stable_start(spec, horizon);
    return spec;
}

} // namespace cfdim
