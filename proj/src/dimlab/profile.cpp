#include "cfdim/dimlab/profile.hpp"

#include "cfdim/errors.hpp"
#include "cfdim/numerics/growth.hpp"
#include "cfdim/numerics/random.hpp"

#include <cmath>
#include <sstream>

namespace cfdim {

std::string to_string(GrowthTag t)
{
    switch (t) {
    case GrowthTag::Power: return "power";
    case GrowthTag::Geometric: return "geometric";
    case GrowthTag::Exponential: return "exponential";
    }
    return "?";
}

GrowthTag parse_growth_tag(const std::string& text)
{
    if (text == "power") return GrowthTag::Power;
    if (text == "geometric") return GrowthTag::Geometric;
    if (text == "exponential") return GrowthTag::Exponential;
    throw DomainError("unknown growth tag '" + text + "' (expected power, geometric, exponential)");
}

namespace {

void validate(const ProfileQuery& q)
{
    if (q.gamma.sign() <= 0) throw DomainError("profile needs gamma > 0");
    if (q.tag == GrowthTag::Geometric && q.gamma <= ExactRational(1))
        throw DomainError("geometric growth needs gamma > 1");
    if (q.d <= ExactRational(1)) throw DomainError("profile needs d > 1");
    if (q.n_max < 1) throw DomainError("profile needs n_max >= 1");
}

ExactRational rational_pow(const ExactRational& x, unsigned long k)
{
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), x.numerator().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), x.denominator().get_mpz_t(), k);
    return ExactRational(num, den);
}

bool exact_terms(const ProfileQuery& q)
{
    if (q.tag == GrowthTag::Geometric) return true;
    if (q.tag == GrowthTag::Power) return q.gamma.is_integer() && q.gamma.numerator().fits_ulong_p();
    return false;
}

double log_of(const BigInt& x)
{
    long e = 0;
    const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

} // namespace

std::vector<ProfileRow> local_dimension_profile(const ProfileQuery& q, long precision)
{
    validate(q);
    std::vector<ProfileRow> rows;
    rows.reserve(static_cast<std::size_t>(q.n_max));
    const ExactRational dm1 = q.d - ExactRational(1);
    if (exact_terms(q)) {
        ExactRational before;  // sum_{j<n} L(j)
        for (long n = 1; n <= q.n_max; ++n) {
            const ExactRational term = q.tag == GrowthTag::Power
                                           ? rational_pow(ExactRational(n), q.gamma.numerator().get_ui())
                                           : rational_pow(q.gamma, static_cast<unsigned long>(n));
            const ExactRational upto = before + term;
            const ExactRational rho = before / (q.d * upto - dm1 * term);
            rows.push_back({n, rho, BigReal::exact(rho, precision)});
            before = upto;
        }
        return rows;
    }
    const long w = precision + 32;
    const BigReal d = BigReal::exact(q.d, w);
    const BigReal dm1r = BigReal::exact(dm1, w);
    BigReal before = BigReal::exact(0, w);
    for (long n = 1; n <= q.n_max; ++n) {
        const BigReal term = q.tag == GrowthTag::Power ? power(BigInt(n), q.gamma, w)
                                                       : exp(BigReal::exact(q.gamma * ExactRational(n), w));
        const BigReal upto = before + term;
        rows.push_back({n, std::nullopt, before / (d * upto - dm1r * term)});
        before = upto;
    }
    return rows;
}

BigReal profile_limit(const ProfileQuery& q, long precision)
{
    validate(q);
    const BigReal one = BigReal::exact(1, precision);
    switch (q.tag) {
    case GrowthTag::Power: return one / BigReal::exact(q.d, precision);
    case GrowthTag::Geometric: return BigReal::exact(ExactRational(1) / (q.gamma + q.d - ExactRational(1)), precision);
    case GrowthTag::Exponential:
        return one / (exp(BigReal::exact(q.gamma, precision)) + BigReal::exact(q.d - ExactRational(1), precision));
    }
    return one;
}

FiniteDepthEstimate finite_depth_dimension(const WindowSpec& spec, long depth, const FiniteDepthMethod& method)
{
    validate(spec);
    if (depth < 1) throw DomainError("depth must be >= 1");
    if (method.kind == FiniteDepthMethod::Kind::sampled && method.samples < 1)
        throw DomainError("sampled estimate needs samples >= 1");
    std::vector<DigitWindow> windows;
    FiniteDepthEstimate out;
    out.depth = depth;
    for (long j = spec.start; j <= depth; ++j) {
        windows.push_back(digit_window(spec, j));
        out.log_count += log_of(windows.back().count());
    }
    // -log |I_n| = log q_n + log(q_n + q_{n-1}), digits before the start are 1
    auto neg_log_length = [&](auto&& digit_at) {
        BigInt q_prev = 0, q = 1;
        for (long j = 1; j <= depth; ++j) {
            const BigInt a = j < spec.start ? BigInt(1) : digit_at(windows[static_cast<std::size_t>(j - spec.start)]);
            BigInt next = a * q + q_prev;
            q_prev = q;
            q = next;
        }
        return log_of(q) + log_of(q + q_prev);
    };
    if (method.kind == FiniteDepthMethod::Kind::midpoint) {
        out.log_length = neg_log_length([](const DigitWindow& w) {
            BigInt m = w.lo + w.hi;
            mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
            return m;
        });
    } else {
        double acc = 0;
        for (long i = 0; i < method.samples; ++i) {
            const std::uint64_t seed = derive_seed(method.seed, static_cast<std::uint64_t>(i));
            acc += neg_log_length([&](const DigitWindow& w) {
                Engine engine(derive_seed(seed, static_cast<std::uint64_t>(w.n)));
                return uniform_integer(engine, w.lo, w.hi);
            });
        }
        out.log_length = acc / static_cast<double>(method.samples);
    }
    out.estimate = out.log_count / out.log_length;
    return out;
}

std::vector<Figure1Row> figure1_data(const std::vector<ExactRational>& gammas)
{
    std::vector<Figure1Row> rows;
    const ExactRational half(1, 2);
    std::optional<ExactRational> prev_power;
    for (const auto& g : gammas) {
        if (g.sign() <= 0) throw DomainError("figure1 grid must lie in (0, inf); got " + g.to_string());
        Figure1Row r{g, "exp-power", g < half ? ExactRational(1) : half, ""};
        if (g >= half && (!prev_power || *prev_power < half) && (prev_power || g == half))
            r.note = "jump at gamma=1/2";
        prev_power = g;
        rows.push_back(r);
        if (g > ExactRational(1)) {
            rows.push_back({g, "poly", ExactRational(1), ""});
            rows.push_back({g, "exp-geom", ExactRational(1) / (g + ExactRational(1)), ""});
        }
    }
    return rows;
}

std::vector<ExactRational> parse_grid(const std::string& text)
{
    std::vector<ExactRational> out;
    if (text.find(':') == std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(ExactRational::parse(item));
        if (out.empty()) throw DomainError("empty grid");
        return out;
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("grid must be start:stop:step, got '" + text + "'");
    const ExactRational a = ExactRational::parse(parts[0]);
    const ExactRational b = ExactRational::parse(parts[1]);
    const ExactRational step = ExactRational::parse(parts[2]);
    if (step.sign() <= 0) throw DomainError("grid step must be positive");
    if (b < a) throw DomainError("grid stop below start");
    for (ExactRational x = a; x <= b; x += step) {
        out.push_back(x);
        if (out.size() > 1'000'000) throw DomainError("grid too large");
    }
    return out;
}

} // namespace cfdim
