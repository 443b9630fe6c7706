#include "cfdim/ifs/system.hpp"

#include "cfdim/errors.hpp"
#include "cfdim/numerics/zeta.hpp"

#include <cmath>

namespace cfdim {

bool ConditionReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.pass; });
}

namespace {

bool strictly_below(const BigReal& a, const BigReal& b)
{
    return mpfr_less_p(a.upper().get(), b.lower().get());
}

// a <= b unless certainly violated; identities such as xi_i = lambda_i pass
bool at_most(const BigReal& a, const BigReal& b)
{
    return !strictly_below(b, a);
}

} // namespace

// ---- affine model ----

AffineGaussLike::AffineGaussLike(const ExactRational& d) : d_(d)
{
    if (d <= ExactRational(1)) throw DomainError("d-decaying system needs d > 1 (zeta(d) diverges at d = 1)");
}

BigReal AffineGaussLike::zeta_d(long precision) const
{
    std::scoped_lock lock(mutex_);
    auto it = zeta_.find(precision);
    if (it == zeta_.end()) it = zeta_.emplace(precision, zeta(d_, precision + 16)).first;
    return it->second;
}

BigReal AffineGaussLike::weight(const BigInt& i, long precision) const
{
    if (i < 1) throw DomainError("branch index must be >= 1");
    const long w = precision + 16;
    return pow(BigReal::exact(i, w), BigReal::exact(-d_, w)) / zeta_d(precision);
}

BigReal AffineGaussLike::tail(const BigInt& i, long precision) const
{
    if (i < 1) throw DomainError("tail index must be >= 1");
    if (i == 1) return BigReal::exact(1, precision + 16);
    {
        std::scoped_lock lock(mutex_);
        if (auto it = tails_.find({precision, i}); it != tails_.end()) return it->second;
    }
    const BigReal t = hurwitz_zeta(BigReal::exact(d_, precision + 48), i, precision + 16) / zeta_d(precision);
    std::scoped_lock lock(mutex_);
    tails_.emplace(std::make_pair(precision, i), t);
    return t;
}

BigReal AffineGaussLike::apply(const BigInt& i, const BigReal& x, long precision) const
{
    return tail(i + 1, precision) + weight(i, precision) * (BigReal::exact(1, precision + 16) - x);
}

std::pair<BigReal, BigReal> AffineGaussLike::image(const BigInt& i, long precision) const
{
    return {tail(i + 1, precision), tail(i, precision)};
}

BigReal AffineGaussLike::invert(const BigInt& i, const BigReal& y, long precision) const
{
    return BigReal::exact(1, precision + 16) - (y - tail(i + 1, precision)) / weight(i, precision);
}

BigInt AffineGaussLike::locate(const BigReal& y, long precision) const
{
    if (!y.certainly_positive())
        throw AmbiguousBoundary("point at or near 0, where the branches accumulate");
    if (mpfr_cmp_ui(y.lower().get(), 1) > 0) throw DomainError("point above 1");
    // T_i ~ i^{1-d} / ((d-1) zeta(d))
    const double dd = d_.to_double();
    const double est = std::pow(y.center_double() * (dd - 1) * zeta_d(64).center_double(), -1.0 / (dd - 1));
    BigInt i = est > 1e15 ? BigInt(1) : BigInt(std::max(1L, static_cast<long>(est)));
    if (est > 1e15) mpz_set_d(i.get_mpz_t(), std::floor(est));
    for (int step = 0; step < 10000; ++step) {
        const BigReal hi = tail(i, precision);
        const BigReal lo = tail(i + 1, precision);
        if (strictly_below(lo, y) && strictly_below(y, hi)) return i;
        if (strictly_below(hi, y)) {
            if (i == 1) throw DomainError("point above 1");
            i -= 1;
        } else if (strictly_below(y, lo)) {
            i += 1;
        } else {
            throw AmbiguousBoundary("point within precision of the boundary of branch " + i.get_str());
        }
    }
    throw PrecisionExhausted("branch search did not settle");
}

std::pair<ExactRational, ExactRational> AffineGaussLike::decay_constants(const ExactRational& eps) const
{
    if (eps.sign() < 0) throw DomainError("decay slack must be >= 0");
    // zeta(d) in (1, 1 + 1/(d-1)], so 1/(2 zeta) and 2/zeta bracket with rational room
    const ExactRational upper_zeta = ExactRational(1) + ExactRational(1) / (d_ - ExactRational(1));
    return {ExactRational(1) / (ExactRational(2) * upper_zeta), ExactRational(2)};
}

nlohmann::json AffineGaussLike::to_json() const
{
    return {{"model", "affine"}, {"d", d_.to_string()}};
}

std::shared_ptr<AffineGaussLike> build_affine(const ExactRational& d, long precision, long check_limit)
{
    auto sys = std::make_shared<AffineGaussLike>(d);
    sys->report_ = check_conditions(*sys, check_limit, precision);
    if (!sys->report_.all_pass()) throw DomainError("affine system failed its condition checks");
    return sys;
}

// ---- Gauss system ----

BigReal GaussSystem::xi(const BigInt& i, long precision) const
{
    return BigReal::exact(ExactRational(BigInt(1), (i + 1) * (i + 1)), precision);
}

BigReal GaussSystem::lambda(const BigInt& i, long precision) const
{
    return BigReal::exact(ExactRational(BigInt(1), i * i), precision);
}

BigReal GaussSystem::apply(const BigInt& i, const BigReal& x, long precision) const
{
    return BigReal::exact(1, precision) / (BigReal::exact(i, precision) + x);
}

std::pair<BigReal, BigReal> GaussSystem::image(const BigInt& i, long precision) const
{
    return {BigReal::exact(ExactRational(BigInt(1), i + 1), precision),
            BigReal::exact(ExactRational(BigInt(1), i), precision)};
}

BigReal GaussSystem::invert(const BigInt& i, const BigReal& y, long precision) const
{
    return BigReal::exact(1, precision) / y - BigReal::exact(i, precision);
}

BigInt GaussSystem::locate(const BigReal& y, long precision) const
{
    if (!y.certainly_positive()) throw AmbiguousBoundary("point at or near 0, where the branches accumulate");
    const BigReal z = BigReal::exact(1, precision) / y;
    Mpfr fl(z.precision());
    mpfr_floor(fl.get(), z.lower().get());
    if (mpfr_cmp_ui(fl.get(), 1) < 0) throw DomainError("point above 1");
    // strictly inside (1/(i+1), 1/i) means i < z < i + 1
    Mpfr next(z.precision() + 1);
    mpfr_add_ui(next.get(), fl.get(), 1, MPFR_RNDN);
    if (mpfr_equal_p(fl.get(), z.lower().get()) || mpfr_cmp(z.upper().get(), next.get()) >= 0)
        throw AmbiguousBoundary("point within precision of a branch endpoint");
    BigInt i;
    mpfr_get_z(i.get_mpz_t(), fl.get(), MPFR_RNDN);
    return i;
}

BigReal GaussSystem::contraction_bound(long precision) const
{
    return BigReal::exact(ExactRational(1, 4), precision);
}

std::pair<ExactRational, ExactRational> GaussSystem::decay_constants(const ExactRational& eps) const
{
    if (eps.sign() < 0) throw DomainError("decay slack must be >= 0");
    return {ExactRational(1, 4), ExactRational(1)};
}

nlohmann::json GaussSystem::to_json() const
{
    return {{"model", "gauss"}};
}

std::shared_ptr<GaussSystem> gauss_as_ddecaying()
{
    return std::make_shared<GaussSystem>();
}

// ---- conditions ----

double pair_contraction_sup(const DDecayingSystem& system, long limit, int grid)
{
    // |(f_a o f_b)'(x)| by a symmetric difference quotient at 128 bits
    const long p = 128;
    double sup = 0;
    const BigReal h = BigReal::exact(ExactRational(1, 1L << 30), p);
    for (long a = 1; a <= limit; ++a)
        for (long b = 1; b <= limit; ++b)
            for (int g = 0; g <= grid; ++g) {
                const ExactRational x(g, grid);
                const BigReal xl = BigReal::exact(x, p) - (g == grid ? h : BigReal::exact(0, p));
                const BigReal xr = BigReal::exact(x, p) + (g == 0 ? h : BigReal::exact(0, p));
                const BigReal xm = g == 0 || g == grid ? xr : xr + h;
                const BigReal x0 = g == 0 || g == grid ? xl : xl - h;
                const BigReal f1 = system.apply(BigInt(a), system.apply(BigInt(b), xm, p), p);
                const BigReal f0 = system.apply(BigInt(a), system.apply(BigInt(b), x0, p), p);
                sup = std::max(sup, std::fabs(((f1 - f0) / (xm - x0)).center_double()));
            }
    return sup;
}

ConditionReport check_conditions(const DDecayingSystem& system, long limit, long precision)
{
    if (limit < 2) throw DomainError("condition checks need limit >= 2");
    ConditionReport rep;
    const long p = precision;
    const BigReal one = BigReal::exact(1, p);
    const BigReal A = system.contraction_bound(p);
    const ExactRational d = system.d();

    {
        ConditionCheck c{"(1) contraction", strictly_below(A, one) && A.certainly_positive(), ""};
        if (system.contraction_step() == 1) {
            for (long i = 1; i <= limit && c.pass; ++i) c.pass = at_most(system.lambda(BigInt(i), p), A);
            c.detail = "m=1, A=" + A.to_string(8);
        } else {
            const double sup = pair_contraction_sup(system);
            c.pass = c.pass && system.contraction_step() == 2 && sup <= A.center_double() * (1 + 1e-6);
            c.detail = "m=" + std::to_string(system.contraction_step()) + ", A=" + A.to_string(8) +
                       ", sampled sup=" + std::to_string(sup);
        }
        rep.checks.push_back(c);
    }
    {
        ConditionCheck c{"(2) disjoint interiors", true, "i<=" + std::to_string(limit)};
        for (long i = 1; i < limit && c.pass; ++i) {
            const auto [l0, r0] = system.image(BigInt(i), p);
            const auto [l1, r1] = system.image(BigInt(i + 1), p);
            c.pass = strictly_below(l0, r0) && strictly_below(l1, r1) && !strictly_below(l0, r1);
        }
        rep.checks.push_back(c);
    }
    {
        ConditionCheck c{"(3) derivative bounds", true, ""};
        for (const ExactRational& eps : {ExactRational(0), ExactRational(1, 10), ExactRational(1, 2)}) {
            const auto [c1, c2] = system.decay_constants(eps);
            for (long i = 1; i <= limit && c.pass; ++i) {
                const BigInt bi(i);
                const BigReal xi = system.xi(bi, p);
                const BigReal la = system.lambda(bi, p);
                const BigReal ib = BigReal::exact(i, p);
                const auto [l, r] = system.image(bi, p);
                const BigReal len = r - l;  // mean value theorem: xi <= len <= lambda
                c.pass = xi.certainly_positive() && at_most(xi, la) && at_most(la, one) &&
                         at_most(BigReal::exact(c1, p) / pow(ib, BigReal::exact(d + eps, p)), xi) &&
                         at_most(la, BigReal::exact(c2, p) / pow(ib, BigReal::exact(d - eps, p))) &&
                         !strictly_below(len, xi) && !strictly_below(la, len);
            }
            c.detail += (c.detail.empty() ? "" : "; ") + ("eps=" + eps.to_string() + ": C1=" + c1.to_string() +
                                                          " C2=" + c2.to_string());
        }
        rep.checks.push_back(c);
    }
    {
        // image lengths plus the remaining left end add up to 1
        ConditionCheck c{"tiling of [0,1)", true, ""};
        BigReal acc = BigReal::exact(0, p);
        for (long i = 1; i <= limit && c.pass; ++i) {
            const auto [l, r] = system.image(BigInt(i), p);
            acc = acc + (r - l);
            c.pass = (acc + l).contains(ExactRational(1));
        }
        rep.checks.push_back(c);
    }
    {
        ConditionCheck c{"branch order f_{i+1} < f_i", true, "x in {0,1/4,1/2,3/4,1}"};
        for (long i = 1; i < std::min(limit, 50L) && c.pass; ++i)
            for (int g = 0; g <= 4 && c.pass; ++g) {
                const BigReal x = BigReal::exact(ExactRational(g, 4), p);
                c.pass = strictly_below(system.apply(BigInt(i + 1), x, p), system.apply(BigInt(i), x, p));
            }
        rep.checks.push_back(c);
    }
    {
        // lambda_i i^{d+1/2} grows and xi_i i^{d-1/2} shrinks along i = 10, 100, 1000
        ConditionCheck c{"decay trends eps=1/2", true, ""};
        double prev_up = 0, prev_down = INFINITY;
        for (long i = 10; i <= limit; i *= 10) {
            const BigReal ib = BigReal::exact(i, p);
            const double up =
                (system.lambda(BigInt(i), p) * pow(ib, BigReal::exact(d + ExactRational(1, 2), p))).center_double();
            const double down =
                (system.xi(BigInt(i), p) * pow(ib, BigReal::exact(d - ExactRational(1, 2), p))).center_double();
            c.pass = c.pass && up > prev_up && down < prev_down;
            c.detail += "i=" + std::to_string(i) + ": " + std::to_string(up) + "/" + std::to_string(down) + " ";
            prev_up = up;
            prev_down = down;
        }
        rep.checks.push_back(c);
    }
    return rep;
}

// ---- projection and expansion ----

BigReal project(const DDecayingSystem& system, const DigitWord& word, long precision, const ExactRational& tail)
{
    if (tail.sign() < 0 || tail > ExactRational(1)) throw DomainError("tail point must lie in [0,1]");
    BigReal x = BigReal::exact(tail, precision + 16);
    for (auto it = word.digits().rbegin(); it != word.digits().rend(); ++it) x = system.apply(*it, x, precision);
    return x;
}

BigReal cylinder_image(const DDecayingSystem& system, const DigitWord& word, long precision)
{
    return hull(project(system, word, precision, ExactRational(0)), project(system, word, precision, ExactRational(1)));
}

DigitWord symbolic_expand(const DDecayingSystem& system, const BigReal& x, std::size_t n)
{
    if (n == 0) throw DomainError("expansion length must be >= 1");
    const long p = x.precision();
    std::vector<BigInt> digits;
    BigReal y = x;
    for (std::size_t k = 0; k < n; ++k) {
        const BigInt i = system.locate(y, p);
        digits.push_back(i);
        if (k + 1 < n) y = system.invert(i, y, p);
    }
    return DigitWord(std::move(digits));
}

DigitWord symbolic_expand(const DDecayingSystem& system, const RealProducer& x, std::size_t n,
                          const PrecisionSchedule& schedule)
{
    const auto steps = schedule.steps();
    for (std::size_t s = 0; s < steps.size(); ++s) {
        try {
            return symbolic_expand(system, x(steps[s]), n);
        } catch (const AmbiguousBoundary&) {
            if (s + 1 == steps.size()) throw;
        }
    }
    throw AmbiguousBoundary("symbolic expansion undecided");
}

DimensionPrediction predicted_dimension(const ExactRational& d, const GrowthFunction& phi, long profile_n)
{
    if (d <= ExactRational(1)) throw DomainError("prediction needs d > 1");
    const ExactRational inv_d = ExactRational(1) / d;
    DimensionPrediction out;
    if (const auto* f = std::get_if<ExpPower>(&phi)) {
        if (f->gamma < inv_d) {
            out.value = ExactRational(1);
            out.regime = "exp(n^gamma), gamma < 1/d";
            return out;
        }
        if (f->gamma == inv_d && d != ExactRational(2))
            throw Unsupported("exp(n^gamma) at gamma = 1/d is only covered for d = 2");
        out.value = inv_d;
        out.regime = f->gamma == inv_d ? "exp(n^gamma), gamma = 1/2, d = 2" : "exp(n^gamma), gamma > 1/d";
        out.query = ProfileQuery{GrowthTag::Power, f->gamma, d, profile_n};
    } else if (const auto* g = std::get_if<ExpGeometric>(&phi)) {
        out.value = ExactRational(1) / (g->gamma + d - ExactRational(1));
        out.regime = "exp(gamma^n), gamma > 1";
        out.query = ProfileQuery{GrowthTag::Geometric, g->gamma, d, profile_n};
    } else {
        throw Unsupported("no dimension formula for phi = " + to_string(phi));
    }
    out.profile = local_dimension_profile(*out.query);
    return out;
}

std::shared_ptr<DDecayingSystem> system_from_json(const nlohmann::json& j)
{
    try {
        const std::string model = j.at("model").get<std::string>();
        if (model == "gauss") return gauss_as_ddecaying();
        if (model == "affine") return std::make_shared<AffineGaussLike>(ExactRational::parse(j.at("d").get<std::string>()));
        throw DomainError("unknown system model '" + model + "'");
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("system spec: ") + e.what());
    }
}

} // namespace cfdim
