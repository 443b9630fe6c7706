#include "cfdim/dimlab/cover.hpp"

#include "cfdim/comp/composition.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/numerics/certified.hpp"
#include "cfdim/numerics/growth.hpp"

#include <cmath>
#include <functional>

namespace cfdim {

std::string to_string(Subsequence s)
{
    switch (s) {
    case Subsequence::PowerGamma: return "power-gamma";
    case Subsequence::SquareOverL: return "square-over-l";
    case Subsequence::LargestQuotient: return "largest-quotient";
    }
    return "?";
}

Subsequence parse_subsequence(const std::string& text)
{
    if (text == "power-gamma") return Subsequence::PowerGamma;
    if (text == "square-over-l") return Subsequence::SquareOverL;
    if (text == "largest-quotient") return Subsequence::LargestQuotient;
    throw DomainError("unknown subsequence '" + text + "' (expected power-gamma, square-over-l, largest-quotient)");
}

BigReal cover_r1(const ExactRational& eps, long precision)
{
    const BigReal one = BigReal::exact(1, precision);
    return BigReal::exact(2 * eps, precision) * (one - one / const_e(precision));
}

BigReal cover_r2(const ExactRational& eps, long precision)
{
    const BigReal e = const_e(precision);
    const BigReal ep = BigReal::exact(eps, precision);
    return (e - BigReal::exact(1, precision) - ep * e - ep) / e;
}

void validate(const CoverScheme& scheme)
{
    if (!(ExactRational(1, 2) < scheme.s && scheme.s < ExactRational(1)))
        throw DomainError("cover sums need 1/2 < s < 1; got s = " + scheme.s.to_string());
    if (scheme.eps.sign() <= 0) throw DomainError("cover sums need eps > 0");
    // eps < (e-1)/(e+1) keeps r2 > 0
    if (!cover_r2(scheme.eps, 128).certainly_positive())
        throw DomainError("cover sums need eps < (e-1)/(e+1) ~ 0.4621; got eps = " + scheme.eps.to_string());
    if (scheme.gamma.sign() <= 0) throw DomainError("cover sums need gamma > 0");
    if (scheme.subsequence == Subsequence::SquareOverL && scheme.L.sign() <= 0)
        throw DomainError("the L scheme needs L > 0");
    if (scheme.k_max < 1) throw DomainError("k_max must be >= 1");
}

namespace {

long round_certified(const RealProducer& x)
{
    return certified_floor([&](long p) { return x(p) + BigReal::exact(ExactRational(1, 2), p); }).get_si();
}

// Smooth per-term log increment, for the projected crossover only.
double smooth_increment(const CoverScheme& sc, double logC, double ell)
{
    const double g = sc.gamma.to_double();
    const double s = sc.s.to_double();
    const double eps = sc.eps.to_double();
    const double e = std::exp(1.0);
    const double base = std::log(2 * eps * (1 - 1 / e)) + 2 * s * std::log((e - 1 - eps * e - eps) / e);
    switch (sc.subsequence) {
    case Subsequence::PowerGamma: {
        const double delta = std::pow(ell, 1 / g) - std::pow(ell - 1, 1 / g);
        return base + (1 - 2 * s) * ell + delta * logC;
    }
    case Subsequence::SquareOverL: {
        const double L = sc.L.to_double();
        return base + (2 * ell - 1) / (L * L) * logC + (1 - 2 * s) * ell / L;
    }
    case Subsequence::LargestQuotient: {
        auto n = [&](double k) { return k <= 1 ? 0.0 : std::pow(k, 1 / g) * std::pow(std::log(k), 1 / (g * g)); };
        const double lk = std::log(ell);
        return std::log(1.5) + std::log(n(ell)) + (1 - 2 * s) * ell * std::pow(lk, 1 / g) +
               (n(ell) - n(ell - 1)) * logC + 2 * s * std::log(2.0);
    }
    }
    return 0;
}

std::optional<double> project_crossover(const CoverScheme& sc, double logC)
{
    const double first = sc.subsequence == Subsequence::LargestQuotient ? 2.0 : 1.0;
    double last_positive = -1;
    for (double ell = first; ell <= 1e9; ell = std::max(ell + 1, std::floor(ell * 1.01)))
        if (smooth_increment(sc, logC, ell) >= 0) last_positive = ell;
    if (last_positive < 0) return first;
    if (smooth_increment(sc, logC, 1e9) >= 0) return std::nullopt;
    // refine past the last positive sample
    double lo = last_positive, hi = std::max(last_positive + 1, std::floor(last_positive * 1.01));
    while (smooth_increment(sc, logC, hi) >= 0) hi = std::max(hi + 1, std::floor(hi * 1.01));
    while (hi - lo > 1) {
        const double mid = std::floor((lo + hi) / 2);
        (smooth_increment(sc, logC, mid) >= 0 ? lo : hi) = mid;
    }
    return hi;
}

} // namespace

CoverSumResult cover_sum_terms(const CoverScheme& scheme, long precision)
{
    validate(scheme);
    const long w = precision + 16;
    const ExactRational two_s = ExactRational(2) * scheme.s;
    const BigReal s = BigReal::exact(scheme.s, w);
    const BigReal logC = log(generalized_bound_constant(two_s, w));
    const BigReal log_r1 = log(cover_r1(scheme.eps, w));
    const BigReal log_r2 = log(cover_r2(scheme.eps, w));
    const BigReal one_minus_2s = BigReal::exact(ExactRational(1) - two_s, w);
    const ExactRational inv_g = ExactRational(1) / scheme.gamma;

    CoverSumResult out;
    BigReal running = BigReal::exact(0, w);
    long prev_n = 0;
    for (long ell = 1; ell <= scheme.k_max; ++ell) {
        BigReal f(w);
        long n = 0;
        double delta = 0;
        switch (scheme.subsequence) {
        case Subsequence::PowerGamma: {
            n = round_certified([&](long p) { return power(BigInt(ell), inv_g, p); });
            if (n == prev_n) continue;  // empty block
            delta = static_cast<double>(n - prev_n);
            f = log_r1 + BigReal::exact(ell, w) + BigReal::exact(n - prev_n, w) * logC +
                BigReal::exact(2, w) * s * log_r2 - BigReal::exact(2, w) * s * BigReal::exact(ell, w);
            break;
        }
        case Subsequence::SquareOverL: {
            const ExactRational d = ExactRational(2 * ell - 1) / (scheme.L * scheme.L);
            n = (ExactRational(ell * ell) / (scheme.L * scheme.L) + ExactRational(1, 2)).floor().get_si();
            delta = d.to_double();
            f = log_r1 + BigReal::exact(2, w) * s * log_r2 + BigReal::exact(d, w) * logC +
                one_minus_2s * BigReal::exact(ExactRational(ell) / scheme.L, w);
            break;
        }
        case Subsequence::LargestQuotient: {
            if (ell == 1) continue;  // n_1 = 0
            auto nk = [&](long p) {
                const BigReal lk = log(BigReal::exact(ell, p));
                return power(BigInt(ell), inv_g, p) * pow(lk, BigReal::exact(inv_g * inv_g, p));
            };
            n = round_certified(nk);
            if (n == prev_n) continue;
            delta = static_cast<double>(n - prev_n);
            const BigReal lk = log(BigReal::exact(ell, w));
            const BigReal main = BigReal::exact(ell, w) * pow(lk, BigReal::exact(inv_g, w));
            // |D_l| < (3/2) n_l and m > (1/2) e^{l (log l)^{1/g}}
            f = log(BigReal::exact(ExactRational(3, 2), w) * nk(w)) + one_minus_2s * main +
                BigReal::exact(n - prev_n, w) * logC + BigReal::exact(2, w) * s * log(BigReal::exact(2, w));
            break;
        }
        }
        prev_n = n;
        running = running + f;
        out.rows.push_back({ell, n, delta, f, running});
    }
    if (out.rows.empty()) throw DomainError("cover scheme produced no blocks");

    const std::size_t tail = std::max<std::size_t>(1, (out.rows.size() + 4) / 5);
    out.bounded_trend = true;
    for (std::size_t i = out.rows.size() - tail; i < out.rows.size(); ++i)
        out.bounded_trend = out.bounded_trend && out.rows[i].log_factor.certainly_negative();
    if (out.rows.back().log_factor.certainly_negative()) {
        std::size_t i = out.rows.size();
        while (i > 0 && out.rows[i - 1].log_factor.certainly_negative()) --i;
        out.crossover = out.rows[i].ell;
    }
    out.projected_crossover = project_crossover(scheme, logC.center_double());
    return out;
}

BigReal sL_function(const ExactRational& L, const ExactRational& s, long precision)
{
    const ExactRational t = ExactRational(2) * s;
    return log(generalized_bound_constant(t, precision)) -
           BigReal::exact((t - ExactRational(1)) * L / ExactRational(2), precision + 8);
}

SLRoot solve_sL(const ExactRational& L, long bits)
{
    if (L.sign() <= 0) throw DomainError("solve_sL needs L > 0");
    if (bits < 1 || bits > 1000) throw DomainError("bracket bits must be in [1, 1000]");
    ExactRational delta(1);
    delta = delta / ExactRational(BigInt(BigInt(1) << 40));
    ExactRational lo = ExactRational(1, 2) + delta;
    ExactRational hi = ExactRational(1) - delta;
    const long start = std::max(128L, bits + 64);
    auto sign_at = [&](const ExactRational& s) {
        return certified_sign([&](long p) { return sL_function(L, s, p); }, {start, 8192});
    };
    int slo = 0, shi = 0;
    try {
        slo = sign_at(lo);
        shi = sign_at(hi);
    } catch (const PrecisionExhausted&) {
        throw NoRoot("s_L: sign at the bracket ends is undecided for L = " + L.to_string());
    }
    if (slo <= 0 || shi >= 0)
        throw NoRoot("s_L: no sign change of log((9/2)(2+zeta(2s))) - (2s-1)L/2 on (1/2, 1) for L = " +
                     L.to_string() + " (L is below the threshold)");
    ExactRational width(1);
    width = width / ExactRational(BigInt(BigInt(1) << bits));
    while (hi - lo > width) {
        const ExactRational mid = (lo + hi) / ExactRational(2);
        (sign_at(mid) > 0 ? lo : hi) = mid;
    }
    return {lo, hi, L};
}

} // namespace cfdim
