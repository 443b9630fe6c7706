#include "cfdim/dimlab/cover.hpp"
#include "cfdim/dimlab/profile.hpp"
#include "cfdim/errors.hpp"

#include <doctest.h>
#include <mpfr.h>

#include <cmath>

using namespace cfdim;

namespace {

double zeta_oracle(double t)
{
    mpfr_t z;
    mpfr_init2(z, 200);
    mpfr_set_d(z, t, MPFR_RNDN);
    mpfr_zeta(z, z, MPFR_RNDN);
    const double v = mpfr_get_d(z, MPFR_RNDN);
    mpfr_clear(z);
    return v;
}

double f_oracle(double L, double s)
{
    return std::log(4.5 * (2 + zeta_oracle(2 * s))) - (2 * s - 1) * L / 2;
}

} // namespace

TEST_CASE("cover factors match a direct double evaluation")
{
    for (auto sub : {Subsequence::PowerGamma, Subsequence::SquareOverL, Subsequence::LargestQuotient}) {
        CoverScheme sc;
        sc.subsequence = sub;
        sc.gamma = ExactRational(3, 4);
        sc.s = ExactRational(3, 5);
        sc.L = ExactRational(10);
        sc.k_max = 120;
        const auto res = cover_sum_terms(sc);
        const double e = std::exp(1.0);
        const double eps = 0.1, s = 0.6, g = 0.75;
        const double logC = std::log(4.5 * (2 + zeta_oracle(2 * s)));
        const double lr1 = std::log(2 * eps * (1 - 1 / e));
        const double lr2 = std::log((e - 1 - eps * e - eps) / e);
        double run = 0;
        long prev = 0;
        for (const auto& row : res.rows) {
            const double l = static_cast<double>(row.ell);
            double expect = 0;
            if (sub == Subsequence::PowerGamma) {
                const long n = std::lround(std::pow(l, 1 / g));
                CHECK(row.n == n);
                expect = lr1 + l + (n - prev) * logC + 2 * s * lr2 - 2 * s * l;
            } else if (sub == Subsequence::SquareOverL) {
                expect = lr1 + 2 * s * lr2 + (2 * l - 1) / 100 * logC + (1 - 2 * s) * l / 10;
            } else {
                const double nk = std::pow(l, 1 / g) * std::pow(std::log(l), 1 / (g * g));
                CHECK(row.n == std::lround(nk));
                expect = std::log(1.5 * nk) + (1 - 2 * s) * l * std::pow(std::log(l), 1 / g) +
                         (row.n - prev) * logC + 2 * s * std::log(2.0);
            }
            prev = row.n;
            run += expect;
            CHECK(row.log_factor.center_double() == doctest::Approx(expect).epsilon(1e-9));
            CHECK(row.log_product.center_double() == doctest::Approx(run).epsilon(1e-9));
        }
    }
}

TEST_CASE("cover verdicts")
{
    CoverScheme sc;
    sc.gamma = ExactRational(3, 4);
    sc.s = ExactRational(3, 5);
    sc.k_max = 200;
    auto r = cover_sum_terms(sc);
    CHECK(r.bounded_trend);
    REQUIRE(r.crossover);
    CHECK(*r.crossover < 160);
    // the log-product peaks before the crossover and then decreases
    CHECK(r.rows.back().log_product.center_double() < r.rows[static_cast<std::size_t>(*r.crossover)].log_product.center_double());

    sc.s = ExactRational(51, 100);
    sc.k_max = 20;
    r = cover_sum_terms(sc);
    CHECK_FALSE(r.bounded_trend);
    CHECK(r.rows[5].log_factor.certainly_positive());
    REQUIRE(r.projected_crossover);
    CHECK(*r.projected_crossover > 20);

    // L scheme: slope 2 log C / L^2 + (1 - 2s)/L decides
    sc.subsequence = Subsequence::SquareOverL;
    sc.L = ExactRational(10);
    sc.s = ExactRational(9, 10);
    sc.k_max = 200;
    r = cover_sum_terms(sc);
    const double slope = 2 * std::log(4.5 * (2 + zeta_oracle(1.8))) / 100 + (1 - 1.8) / 10;
    CHECK(r.bounded_trend == (slope < 0));

    sc.s = ExactRational(1, 2);
    CHECK_THROWS_AS(cover_sum_terms(sc), DomainError);
    sc.s = ExactRational(3, 5);
    sc.eps = ExactRational(1, 2);
    CHECK_THROWS_AS(cover_sum_terms(sc), DomainError);
    sc.eps = ExactRational(46, 100);
    CHECK_NOTHROW(cover_sum_terms(sc));
    CHECK(cover_r1(ExactRational(1, 10), 128).center_double() == doctest::Approx(0.2 * (1 - std::exp(-1.0))));
    CHECK(parse_subsequence("largest-quotient") == Subsequence::LargestQuotient);
    CHECK_THROWS_AS(parse_subsequence("x"), DomainError);
}

TEST_CASE("s_L root")
{
    const auto r20 = solve_sL(ExactRational(20));
    CHECK(r20.value() > 0.55);
    CHECK(r20.value() < 0.9);
    CHECK(f_oracle(20, r20.lo.to_double()) > 0);
    CHECK(f_oracle(20, r20.hi.to_double()) < 0);
    CHECK(r20.width() <= ExactRational(1, 1L << 40));
    CHECK(f_oracle(20, 0.55) > 0);
    CHECK(f_oracle(20, 0.9) < 0);

    // independent bisection on the MPFR zeta
    double lo = 0.5 + 1e-9, hi = 1 - 1e-9;
    for (int i = 0; i < 60; ++i) {
        const double mid = (lo + hi) / 2;
        (f_oracle(100, mid) > 0 ? lo : hi) = mid;
    }
    const auto r100 = solve_sL(ExactRational(100));
    CHECK(r100.value() == doctest::Approx(lo).epsilon(1e-10));

    double prev = 1;
    for (long L : {50L, 100L, 1000L, 10000L}) {
        const double v = solve_sL(ExactRational(L)).value();
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 0.51);
    CHECK(f_oracle(10000, 0.51) < 0);

    CHECK_THROWS_AS(solve_sL(ExactRational(5)), NoRoot);
    CHECK_THROWS_AS(solve_sL(ExactRational(0)), DomainError);
    CHECK(solve_sL(ExactRational(30), 10).width() <= ExactRational(1, 1024));
}

TEST_CASE("local dimension profile examples")
{
    ProfileQuery q;
    q.n_max = 100;
    auto rows = local_dimension_profile(q);
    REQUIRE(rows.size() == 100);
    CHECK(rows[99].exact == ExactRational(99, 200));
    CHECK(rows[99].exact == ExactRational(4950, 10000));
    CHECK(rows[1].exact == ExactRational(1, 4));
    CHECK(rows[0].exact == ExactRational(0));

    q = {GrowthTag::Geometric, ExactRational(2), ExactRational(2), 20};
    rows = local_dimension_profile(q);
    CHECK(rows[19].exact == ExactRational(1048574, 3145724));
    CHECK(rows[19].value.center_double() == doctest::Approx(1.0 / 3).epsilon(1e-5));
}

TEST_CASE("profile stays below 1/2 with O(1/n) gap")
{
    // linear growth: rho(n) = (n - 1) / (2n) by direct summation
    const auto rows = local_dimension_profile({GrowthTag::Power, ExactRational(1), ExactRational(2), 10000});
    for (const auto& r : rows) {
        CHECK(r.exact == ExactRational(r.n - 1, 2 * r.n));
        CHECK(*r.exact < ExactRational(1, 2));
    }
    // non-integer power: fit C on [10, 1000] and check the bound to 10^4
    const auto p = local_dimension_profile({GrowthTag::Power, ExactRational(1, 2), ExactRational(2), 10000});
    double C = 0;
    for (long n = 10; n <= 1000; ++n)
        C = std::max(C, n * (0.5 - p[static_cast<std::size_t>(n - 1)].value.center_double()));
    for (const auto& r : p) {
        CHECK(r.value.center_double() < 0.5);
        if (r.n >= 10) CHECK(0.5 - r.value.center_double() <= C / static_cast<double>(r.n) * (1 + 1e-9));
    }
}

TEST_CASE("generalised profile limits")
{
    for (long d : {2L, 3L}) {
        for (const ExactRational& g : {ExactRational(3, 2), ExactRational(2)}) {
            const ProfileQuery power{GrowthTag::Power, g, ExactRational(d), 1000};
            CHECK(std::fabs(local_dimension_profile(power).back().value.center_double() - 1.0 / d) < 1e-2);
            const ProfileQuery geo{GrowthTag::Geometric, g, ExactRational(d), 1000};
            const double lim = 1.0 / (g.to_double() + d - 1);
            CHECK(std::fabs(local_dimension_profile(geo).back().value.center_double() - lim) < 1e-2);
            CHECK(profile_limit(geo).center_double() == doctest::Approx(lim));
        }
    }
    const ProfileQuery ex{GrowthTag::Exponential, ExactRational(1), ExactRational(2), 200};
    const double lim = 1.0 / (std::exp(1.0) + 1);
    CHECK(std::fabs(local_dimension_profile(ex).back().value.center_double() - lim) < 1e-9);
    CHECK_THROWS_AS(local_dimension_profile({GrowthTag::Geometric, ExactRational(1), ExactRational(2), 5}),
                    DomainError);
    CHECK_THROWS_AS(local_dimension_profile({GrowthTag::Power, ExactRational(1), ExactRational(1), 5}), DomainError);
    CHECK(parse_growth_tag("geometric") == GrowthTag::Geometric);
}

TEST_CASE("finite depth dimension")
{
    const WindowSpec a{ExactRational(1), BoundConstant{ExactRational(1)}, BoundConstant{ExactRational(2)}, 1};
    const auto e30 = finite_depth_dimension(a, 30);
    CHECK(e30.estimate > 0.45);
    CHECK(e30.estimate < 0.5);
    // oracle: counts floor(2e^j) - floor(e^j) for irrational endpoints, midpoint digits
    double log_count = 0;
    for (int j = 1; j <= 30; ++j)
        log_count += std::log(std::floor(2 * std::exp(j)) - std::floor(std::exp(j)));
    CHECK(e30.log_count == doctest::Approx(log_count).epsilon(1e-12));
    const auto e15 = finite_depth_dimension(a, 15);
    const auto e60 = finite_depth_dimension(a, 60);
    CHECK(std::fabs(e60.estimate - 0.5) < std::fabs(e15.estimate - 0.5));

    const auto s30 = finite_depth_dimension(a, 30, {FiniteDepthMethod::Kind::sampled, 8, 3});
    CHECK(std::fabs(s30.estimate - e30.estimate) < 0.01);
    CHECK(finite_depth_dimension(a, 30, {FiniteDepthMethod::Kind::sampled, 8, 3}).estimate == s30.estimate);

    const WindowSpec single{ExactRational(1), BoundConstant{ExactRational(1)}, BoundLowerPlusExpGap{ExactRational(1)},
                            1};
    const auto d = finite_depth_dimension(single, 20);
    CHECK(d.log_count == 0.0);
    CHECK(d.estimate == 0.0);

    const WindowSpec narrow{ExactRational(1), BoundConstant{ExactRational(1)},
                            BoundConstant{ExactRational::parse("1.001")}, 1};
    CHECK_THROWS_AS(finite_depth_dimension(narrow, 10), EmptyWindow);
}

TEST_CASE("figure 1 data")
{
    const auto grid = parse_grid("0.1:2.0:0.1");
    REQUIRE(grid.size() == 20);
    CHECK(grid.back() == ExactRational(2));
    const auto rows = figure1_data(grid);
    int jumps = 0;
    std::optional<ExactRational> last;
    for (const auto& r : rows) {
        if (r.family != "exp-power") continue;
        CHECK(r.dim == (r.gamma < ExactRational(1, 2) ? ExactRational(1) : ExactRational(1, 2)));
        if (last && *last != r.dim) ++jumps;
        last = r.dim;
        if (!r.note.empty()) CHECK(r.gamma == ExactRational(1, 2));
    }
    CHECK(jumps == 1);
    const auto pick = figure1_data(parse_grid("0.3,0.5,0.7,1.5,2,3"));
    auto dim = [&](const std::string& fam, const ExactRational& g) {
        for (const auto& r : pick)
            if (r.family == fam && r.gamma == g) return r.dim;
        return ExactRational(-1);
    };
    CHECK(dim("exp-power", ExactRational(3, 10)) == ExactRational(1));
    CHECK(dim("exp-power", ExactRational(1, 2)) == ExactRational(1, 2));
    CHECK(dim("exp-power", ExactRational(7, 10)) == ExactRational(1, 2));
    CHECK(dim("exp-power", ExactRational(3, 2)) == ExactRational(1, 2));
    CHECK(dim("exp-geom", ExactRational(2)) == ExactRational(1, 3));
    CHECK(dim("exp-geom", ExactRational(3)) == ExactRational(1, 4));
    CHECK(dim("poly", ExactRational(3, 2)) == ExactRational(1));
    CHECK(dim("exp-geom", ExactRational(7, 10)) == ExactRational(-1));
    CHECK_THROWS_AS(figure1_data({ExactRational(0)}), DomainError);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), DomainError);
}
