#include "cfdim/construct/stream.hpp"
#include "cfdim/construct/window.hpp"
#include "cfdim/errors.hpp"

#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <map>

using namespace cfdim;

namespace {

// Window endpoints at 4096 bits straight from MPFR: c * e^{n^gamma}, with c
// given as a callback writing into an mpfr_t.
template <class C>
std::pair<BigInt, BigInt> oracle_window(double gamma_num, double gamma_den, long n, C c1, C c2)
{
    mpfr_t g, e, lo, hi, t;
    for (auto* v : {&g, &e, &lo, &hi, &t}) mpfr_init2(*v, 4096);
    mpfr_set_d(g, gamma_num, MPFR_RNDN);
    mpfr_div_d(g, g, gamma_den, MPFR_RNDN);
    mpfr_set_si(e, n, MPFR_RNDN);
    mpfr_pow(e, e, g, MPFR_RNDN);
    mpfr_exp(e, e, MPFR_RNDN);
    c1(t, n, g);
    mpfr_mul(lo, t, e, MPFR_RNDN);
    c2(t, n, g);
    mpfr_mul(hi, t, e, MPFR_RNDN);
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo, MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi, MPFR_RNDU);
    for (auto* v : {&g, &e, &lo, &hi, &t}) mpfr_clear(*v);
    return {a + 1, b - 1};
}

using Fill = void (*)(mpfr_t, long, mpfr_t);

void inc_ratio(mpfr_t out, long n, mpfr_t g)
{
    mpfr_t a, b;
    mpfr_inits2(4096, a, b, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(a, n - 1, MPFR_RNDN);
    mpfr_pow(a, a, g, MPFR_RNDN);
    mpfr_set_si(b, n, MPFR_RNDN);
    mpfr_pow(b, b, g, MPFR_RNDN);
    mpfr_sub(a, a, b, MPFR_RNDN);
    mpfr_expm1(a, a, MPFR_RNDN);
    mpfr_neg(out, a, MPFR_RNDN);
    mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
}

void scaled_inc_ratio(mpfr_t out, long n, mpfr_t g)
{
    inc_ratio(out, n, g);
    mpfr_mul_si(out, out, n + 1, MPFR_RNDN);
    mpfr_div_si(out, out, n, MPFR_RNDN);
}

double ratio(const BigInt& a, double log_denominator)
{
    long e = 0;
    const double m = mpz_get_d_2exp(&e, a.get_mpz_t());
    return std::exp(std::log(m) + e * std::log(2.0) - log_denominator);
}

} // namespace

TEST_CASE("digit window examples")
{
    const WindowSpec a{ExactRational(1), BoundConstant{ExactRational(1)}, BoundConstant{ExactRational(2)}, 1};
    auto w = digit_window(a, 2);
    CHECK(w.lo == 8);
    CHECK(w.hi == 14);
    w = digit_window(a, 1);
    CHECK(w.lo == 3);
    CHECK(w.hi == 5);
    w = digit_window(a, 3);
    CHECK(w.lo == 21);
    CHECK(w.hi == 40);

    const WindowSpec f{ExactRational(1), BoundOneMinusInverse{ExactRational(1)}, BoundConstant{ExactRational(1)}, 1};
    w = digit_window(f, 3);
    CHECK(w.lo == 14);
    CHECK(w.hi == 20);

    const WindowSpec narrow{ExactRational(1), BoundConstant{ExactRational(1)},
                            BoundConstant{ExactRational::parse("1.001")}, 1};
    CHECK_THROWS_AS(digit_window(narrow, 1), EmptyWindow);
    try {
        digit_window(narrow, 2);
        FAIL("expected EmptyWindow");
    } catch (const EmptyWindow& e) {
        CHECK(e.index() == 2);
    }
}

TEST_CASE("digit windows agree with a 4096-bit oracle")
{
    const WindowSpec spec{ExactRational(3, 5), BoundIncrementRatio{}, BoundScaledIncrementRatio{}, 1};
    for (long n : {1L, 7L, 40L, 123L, 499L, 1000L}) {
        const auto [lo, hi] = oracle_window<Fill>(3, 5, n, inc_ratio, scaled_inc_ratio);
        if (hi < lo) {
            CHECK_THROWS_AS(digit_window(spec, n), EmptyWindow);
            continue;
        }
        const auto w = digit_window(spec, n);
        CHECK(w.lo == lo);
        CHECK(w.hi == hi);
    }
    const WindowSpec big{ExactRational(1), BoundConstant{ExactRational(1, 3)}, BoundConstant{ExactRational(7, 5)}, 1};
    for (long n : {1L, 10L, 200L, 1000L}) {
        const auto [lo, hi] = oracle_window<Fill>(
            1, 1, n, [](mpfr_t o, long, mpfr_t) { mpfr_set_d(o, 1.0, MPFR_RNDN), mpfr_div_ui(o, o, 3, MPFR_RNDN); },
            [](mpfr_t o, long, mpfr_t) { mpfr_set_ui(o, 7, MPFR_RNDN), mpfr_div_ui(o, o, 5, MPFR_RNDN); });
        const auto w = digit_window(big, n);
        CHECK(w.lo == lo);
        CHECK(w.hi == hi);
    }
}

TEST_CASE("n_zero")
{
    CHECK(n_zero(ExactRational(1, 2), ExactRational(1), ExactRational(3, 2)) == 1);
    CHECK(n_zero(ExactRational(1), ExactRational(1), ExactRational::parse("1.001")) == 7);
    CHECK(n_zero(ExactRational(1), ExactRational(1), ExactRational(3)) == 1);
    // e^{n^2} > 10^6 first at n = 4 (e^9 ~ 8103, e^16 ~ 8.9e6)
    CHECK(n_zero(ExactRational(2), ExactRational(1), ExactRational::parse("1.000001")) == 4);
    CHECK_THROWS_AS(n_zero(ExactRational(1), ExactRational(2), ExactRational(1)), DomainError);
    CHECK_THROWS_AS(n_zero(ExactRational(0), ExactRational(1), ExactRational(2)), DomainError);
}

TEST_CASE("first stable start and F window start")
{
    const WindowSpec inc = increment_window_spec(ExactRational(3, 5), 500);
    // oracle: scan the 4096-bit windows downward from 500 using the gap test
    long expect = 500;
    for (long n = 499; n >= 1; --n) {
        mpfr_t g, c, e;
        mpfr_inits2(4096, g, c, e, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_d(g, 0.6, MPFR_RNDN);
        mpfr_set_ui(g, 3, MPFR_RNDN);
        mpfr_div_ui(g, g, 5, MPFR_RNDN);
        inc_ratio(c, n, g);
        mpfr_div_si(c, c, n, MPFR_RNDN);
        mpfr_set_si(e, n, MPFR_RNDN);
        mpfr_pow(e, e, g, MPFR_RNDN);
        mpfr_exp(e, e, MPFR_RNDN);
        mpfr_mul(c, c, e, MPFR_RNDN);
        const bool ok = mpfr_cmp_ui(c, 1) > 0;
        mpfr_clears(g, c, e, static_cast<mpfr_ptr>(nullptr));
        if (!ok) break;
        expect = n;
    }
    CHECK(inc.start == expect);
    CHECK(inc.start > 1);

    CHECK(f_window_spec(ExactRational(1), ExactRational(1)).start == 1);
    // (1/n) e^{sqrt n} > 1 only from n = 1 with no dip? e^1 > 1, e^{1.41}/2 = 2.05 > 1, ...
    CHECK(f_window_spec(ExactRational(1, 2), ExactRational(1)).start == 1);
    // alpha = 1/10: smallest n with e^n / (10 n) > 1 is 4 (e^3/30 = 0.67, e^4/40 = 1.36)
    CHECK(f_window_spec(ExactRational(1), ExactRational(1, 10)).start == 4);
}

TEST_CASE("B assumptions")
{
    const WindowSpec thm{ExactRational(3, 5), BoundIncrementRatio{}, BoundScaledIncrementRatio{}, 1};
    const auto r1 = check_B_assumptions(thm, 1000);
    REQUIRE(r1.checks.size() == 3);
    CHECK(r1.all_pass());

    const WindowSpec constant{ExactRational(1), BoundConstant{ExactRational(1)}, BoundConstant{ExactRational(2)}, 1};
    const auto r2 = check_B_assumptions(constant, 100);
    CHECK(r2.all_pass());
    for (const auto& [n, v] : r2.checks[0].samples) CHECK(v == 0.0);

    const WindowSpec shrinking{ExactRational(1, 2), BoundConstant{ExactRational(1)},
                               BoundLowerPlusExpGap{ExactRational(1)}, 1};
    const auto r3 = check_B_assumptions(shrinking, 1000);
    CHECK_FALSE(r3.checks[0].pass);
    CHECK(r3.checks[1].pass);
    CHECK(r3.checks[2].pass);
    // log(e^-n)/sqrt(n) = -sqrt(n)
    CHECK(r3.checks[0].samples.back().second == doctest::Approx(-std::sqrt(1000.0)).epsilon(1e-9));

    CHECK_THROWS_AS(check_B_assumptions(constant, 9), DomainError);
}

TEST_CASE("B stream with increment windows tracks e^{n^gamma}")
{
    const WindowSpec spec = increment_window_spec(ExactRational(3, 5), 500);
    auto s = stream_B(spec, {});
    CHECK(s.provenance() == Provenance::SetB);
    BigInt sum = 0;
    std::vector<double> dev;
    for (long n = 1; n <= 500; ++n) {
        const BigInt a = s.next();
        if (n >= spec.start) {
            // window exactness against the oracle
            const auto [lo, hi] = oracle_window<Fill>(3, 5, n, inc_ratio, scaled_inc_ratio);
            CHECK(lo <= a);
            CHECK(a <= hi);
        } else {
            CHECK(a == 1);
        }
        sum += a;
        if (n == 100 || n == 300 || n == 500) dev.push_back(std::fabs(ratio(sum, std::pow(n, 0.6)) - 1));
    }
    CHECK(dev[0] > dev[1]);
    CHECK(dev[1] > dev[2]);
    CHECK(dev[2] < 0.1);

    const auto rows =
        membership_diagnostics(stream_B(spec, {}), ExpPower{ExactRational(3, 5)}, std::nullopt, {100, 300, 500});
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].S == sum);
    CHECK(std::fabs(rows[2].S_over_phi.center_double() - 1) == doctest::Approx(dev[2]).epsilon(1e-9));
}

TEST_CASE("F stream sandwich is exact")
{
    auto s = stream_F(ExactRational(1), ExactRational(1), {});
    CHECK(s.provenance() == Provenance::SetF);
    std::vector<long> depths;
    for (long n = 1; n <= 300; ++n) depths.push_back(n);
    // T_n - (1 - 1/n) e^n can be below 1 while e^n has 1.44 n bits
    const auto rows = membership_diagnostics(s, Linear{ExactRational(1)}, ExactRational(1), depths, 600);
    for (const auto& r : rows) {
        REQUIRE(r.T_over_exp);
        const BigReal& t = *r.T_over_exp;
        const mpq_class bound(r.n - 1, r.n);
        CHECK(mpfr_cmp_q(t.lower().get(), bound.get_mpq_t()) >= 0);
        CHECK(mpfr_cmp_ui(t.upper().get(), 1) <= 0);
    }
    for (const char* pol : {"mid", "random:9"}) {
        auto f = stream_F(ExactRational(1), ExactRational(1), parse_policy(pol));
        const auto rr = membership_diagnostics(f, Linear{ExactRational(1)}, ExactRational(1), {10, 100}, 128);
        CHECK(rr[1].T_over_exp->certainly_positive());
        CHECK(mpfr_cmp_ui(rr[1].T_over_exp->upper().get(), 1) <= 0);
    }
}

TEST_CASE("uniform measure sampler")
{
    const auto w = sample_mu(ExactRational(1), ExactRational(1), ExactRational(2), 1, 3, 42);
    REQUIRE(w.size() == 3);
    CHECK(w[0] >= 3);
    CHECK(w[0] <= 5);
    CHECK(w[1] >= 8);
    CHECK(w[1] <= 14);
    CHECK(w[2] >= 21);
    CHECK(w[2] <= 40);
    CHECK(sample_mu(ExactRational(1), ExactRational(1), ExactRational(2), 1, 3, 42) == w);

    std::map<long, long> freq;
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
        ++freq[sample_mu(ExactRational(1), ExactRational(1), ExactRational(2), 1, 1, seed)[0].get_si()];
    CHECK(freq.size() == 3);
    for (const auto& [digit, count] : freq) CHECK(std::fabs(count / 10000.0 - 1.0 / 3) < 0.02);

    // digits before the start are 1
    const auto late = sample_mu(ExactRational(1), ExactRational(1), ExactRational(2), 3, 4, 1);
    CHECK(late[0] == 1);
    CHECK(late[1] == 1);
    CHECK(late[2] >= 21);
    CHECK_THROWS_AS(sample_mu(ExactRational(1), ExactRational(1), ExactRational::parse("1.001"), 1, 2, 0), EmptyWindow);
}

TEST_CASE("streams are deterministic and cloneable")
{
    const WindowSpec spec{ExactRational(1), BoundConstant{ExactRational(1)}, BoundConstant{ExactRational(3)}, 1};
    auto a = stream_A(spec, parse_policy("random:5"));
    auto b = stream_A(spec, parse_policy("random:5"));
    CHECK(a.take(40) == b.take(40));
    auto c = a;  // clone mid-stream
    CHECK(c.index() == 40);
    CHECK(a.take(10) == c.take(10));
    auto d = stream_A(spec, parse_policy("random:6"));
    CHECK_FALSE(d.take(40) == stream_A(spec, parse_policy("random:5")).take(40));
    CHECK_THROWS_AS(stream_A(WindowSpec{ExactRational(1), BoundIncrementRatio{}, BoundScaledIncrementRatio{}, 1}, {}),
                    DomainError);
    CHECK(to_string(parse_policy("mid")) == "mid");
    CHECK_THROWS_AS(parse_policy("max"), DomainError);
}

TEST_CASE("E_M construction")
{
    EMSpec spec;
    spec.phi = ExpPower{ExactRational(2, 5)};
    spec.psi = PsiInvLog{};
    spec.M = 2;
    const EMIndexMap map = em_index_map(spec, 3000);
    REQUIRE(map.entries.size() > 3);
    CHECK(map.entries[0].n == 1);  // e^1 >= 1
    BigInt telescoped = 0;
    for (std::size_t i = 0; i < map.entries.size(); ++i) {
        const auto& e = map.entries[i];
        CHECK(e.digit >= 1);
        CHECK(e.k == static_cast<long>(i + 1));
        telescoped += e.digit;
        CHECK(telescoped == e.floor_value + e.k);
        if (i == 0) continue;
        // n_k is the least index reaching (1 + eps_{k-1}) phi(n_{k-1}); checked in double with margin
        const auto& p = map.entries[i - 1];
        CHECK(e.n > p.n);
        const double eps = 1.0 / std::log(static_cast<double>(p.k) + std::exp(1.0));
        const double target = std::log1p(eps) + std::pow(p.n, 0.4);
        CHECK(std::pow(e.n, 0.4) >= target - 1e-12);
        CHECK(std::pow(e.n - 1, 0.4) < target + 1e-12);
    }
    CHECK(map.r(0) == 0);
    CHECK(map.r(map.entries[2].n) == 3);
    CHECK(map.r(map.entries[2].n - 1) == 2);

    auto s = stream_EM(spec);
    const auto word = s.take(3000);
    long k = 0;
    for (long n = 1; n <= 3000; ++n) {
        const BigInt& a = word[static_cast<std::size_t>(n - 1)];
        if (k < static_cast<long>(map.entries.size()) && map.entries[static_cast<std::size_t>(k)].n == n) {
            CHECK(a == map.entries[static_cast<std::size_t>(k)].digit);
            ++k;
        } else {
            CHECK(a == (n - 1) % 2 + 1);
        }
    }

    const auto lip = em_lipschitz_diagnostics(spec, {100, 1000, 3000});
    CHECK(lip[0].r_over_n > lip[2].r_over_n);
    CHECK(lip[0].log_product_over_n > lip[2].log_product_over_n);

    EMSpec rnd = spec;
    rnd.filler = FillerPolicy::random;
    rnd.seed = 3;
    const auto w1 = stream_EM(rnd).take(500);
    CHECK(w1 == stream_EM(rnd).take(500));
    for (const auto& a : w1) CHECK(a >= 1);

    EMSpec bad = spec;
    bad.psi = PsiConstant{ExactRational(0)};
    CHECK_THROWS_AS(stream_EM(bad), DomainError);
    bad = spec;
    bad.M = 0;
    CHECK_THROWS_AS(stream_EM(bad), DomainError);
}

TEST_CASE("E_M with exact linear growth")
{
    EMSpec spec;
    spec.phi = Linear{ExactRational(1)};
    spec.psi = PsiConstant{ExactRational(1)};
    const EMIndexMap map = em_index_map(spec, 100);
    // phi(n) = n, eps = 1: n_k doubles from 1, floors 2 n_k
    std::vector<long> ns;
    for (const auto& e : map.entries) ns.push_back(e.n);
    CHECK(ns == std::vector<long>{1, 2, 4, 8, 16, 32, 64});
    CHECK(map.entries[0].digit == 3);
    CHECK(map.entries[1].digit == 4 - 2 + 1);
}

TEST_CASE("all-ones stream against linear growth")
{
    const WindowSpec spec{ExactRational(1), BoundConstant{ExactRational(1)}, BoundConstant{ExactRational(2)}, 1000000};
    const auto rows = membership_diagnostics(stream_A(spec, {}), Linear{ExactRational(1)}, std::nullopt, {1, 10, 77});
    for (const auto& r : rows) {
        CHECK(r.S_over_phi.is_point());
        CHECK(r.S_over_phi.center_double() == 1.0);
    }
    CHECK_THROWS_AS(membership_diagnostics(stream_A(spec, {}), Linear{ExactRational(1)}, std::nullopt, {5, 5}),
                    DomainError);
}

TEST_CASE("stream parameters round-trip through JSON")
{
    const WindowSpec spec{ExactRational(3, 5), BoundIncrementRatio{}, BoundScaledIncrementRatio{}, 4};
    const auto j = to_json(spec);
    CHECK(j.dump() == R"({"gamma":"3/5","lower":"increment-ratio","start":4,"upper":"scaled-increment-ratio"})");
    const WindowSpec back = window_spec_from_json(j);
    CHECK(to_json(back) == j);
    const WindowSpec g{ExactRational(1, 2), BoundOneMinusInverse{ExactRational(2)},
                       BoundLowerPlusExpGap{ExactRational(3, 2)}, 1};
    CHECK(to_json(window_spec_from_json(to_json(g))) == to_json(g));

    EMSpec em;
    em.phi = ExpSqrtPsi{PsiInvLog{}};
    em.M = 5;
    em.filler = FillerPolicy::random;
    em.seed = 77;
    CHECK(to_json(em_spec_from_json(to_json(em))) == to_json(em));
    CHECK(stream_EM(em).parameters() == to_json(em));
    CHECK_THROWS_AS(window_spec_from_json(nlohmann::json{{"gamma", "1"}}), DomainError);
    CHECK_THROWS_AS(parse_bound("nonsense"), DomainError);
}
