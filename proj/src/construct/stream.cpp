#include "cfdim/construct/stream.hpp"

#include "cfdim/errors.hpp"
#include "cfdim/numerics/random.hpp"

#include <cmath>

namespace cfdim {

std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::SetA: return "A";
    case Provenance::SetB: return "B";
    case Provenance::SetEM: return "EM";
    case Provenance::SetF: return "F";
    case Provenance::MeasureMu: return "mu";
    }
    return "?";
}

DigitStream::DigitStream(std::unique_ptr<DigitGenerator> gen, Provenance provenance, nlohmann::json parameters)
    : gen_(std::move(gen)), provenance_(provenance), parameters_(std::move(parameters))
{
}

DigitStream::DigitStream(const DigitStream& other)
    : gen_(other.gen_->clone()), provenance_(other.provenance_), parameters_(other.parameters_), index_(other.index_)
{
}

DigitStream& DigitStream::operator=(const DigitStream& other)
{
    if (this != &other) *this = DigitStream(other);
    return *this;
}

BigInt DigitStream::next()
{
    BigInt a = gen_->digit(index_ + 1);
    ++index_;
    return a;
}

DigitWord DigitStream::take(std::size_t count)
{
    std::vector<BigInt> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return DigitWord(std::move(out));
}

DigitPolicy parse_policy(const std::string& text)
{
    if (text == "min") return {DigitPolicy::Kind::min, 0};
    if (text == "mid") return {DigitPolicy::Kind::mid, 0};
    if (text.rfind("random:", 0) == 0) return {DigitPolicy::Kind::random, std::stoull(text.substr(7))};
    if (text == "random") return {DigitPolicy::Kind::random, 0};
    throw DomainError("unknown digit policy '" + text + "' (expected min, mid or random:<seed>)");
}

std::string to_string(const DigitPolicy& p)
{
    switch (p.kind) {
    case DigitPolicy::Kind::min: return "min";
    case DigitPolicy::Kind::mid: return "mid";
    case DigitPolicy::Kind::random: return "random:" + std::to_string(p.seed);
    }
    return "?";
}

namespace {

BigInt pick(const DigitWindow& w, const DigitPolicy& policy)
{
    switch (policy.kind) {
    case DigitPolicy::Kind::min: return w.lo;
    case DigitPolicy::Kind::mid: {
        BigInt m = w.lo + w.hi;
        mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
        return m;
    }
    case DigitPolicy::Kind::random: {
        Engine engine(derive_seed(policy.seed, static_cast<std::uint64_t>(w.n)));
        return uniform_integer(engine, w.lo, w.hi);
    }
    }
    return w.lo;
}

class WindowGenerator final : public DigitGenerator {
public:
    WindowGenerator(WindowSpec spec, DigitPolicy policy) : spec_(std::move(spec)), policy_(policy) {}
    BigInt digit(long n) override
    {
        if (n < spec_.start) return BigInt(1);
        return pick(digit_window(spec_, n), policy_);
    }
    std::unique_ptr<DigitGenerator> clone() const override { return std::make_unique<WindowGenerator>(*this); }

private:
    WindowSpec spec_;
    DigitPolicy policy_;
};

nlohmann::json window_params(const WindowSpec& spec, const DigitPolicy& policy)
{
    nlohmann::json j = to_json(spec);
    j["policy"] = to_string(policy);
    return j;
}

WindowSpec constant_spec(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2, long start)
{
    if (c1.sign() <= 0) throw DomainError("window needs c1 > 0");
    WindowSpec spec{gamma, BoundConstant{c1}, BoundConstant{c2}, start};
    validate(spec);
    return spec;
}

} // namespace

DigitStream stream_B(const WindowSpec& spec, const DigitPolicy& policy)
{
    validate(spec);
    return {std::make_unique<WindowGenerator>(spec, policy), Provenance::SetB, window_params(spec, policy)};
}

DigitStream stream_A(const WindowSpec& spec, const DigitPolicy& policy)
{
    validate(spec);
    const auto* a = std::get_if<BoundConstant>(&spec.lower);
    if (!a || !std::holds_alternative<BoundConstant>(spec.upper))
        throw DomainError("set A needs constant window bounds");
    if (a->value.sign() <= 0) throw DomainError("window needs c1 > 0");
    return {std::make_unique<WindowGenerator>(spec, policy), Provenance::SetA, window_params(spec, policy)};
}

DigitStream stream_F(const ExactRational& gamma, const ExactRational& alpha, const DigitPolicy& policy)
{
    const WindowSpec spec = f_window_spec(gamma, alpha);
    auto params = window_params(spec, policy);
    params["alpha"] = alpha.to_string();
    return {std::make_unique<WindowGenerator>(spec, policy), Provenance::SetF, std::move(params)};
}

DigitStream stream_mu(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2, long start,
                      std::uint64_t seed)
{
    const WindowSpec spec = constant_spec(gamma, c1, c2, start);
    const DigitPolicy policy{DigitPolicy::Kind::random, seed};
    return {std::make_unique<WindowGenerator>(spec, policy), Provenance::MeasureMu, window_params(spec, policy)};
}

DigitWord sample_mu(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2, long start,
                    long depth, std::uint64_t seed)
{
    if (depth < 1) throw DomainError("sample depth must be >= 1");
    return stream_mu(gamma, c1, c2, start, seed).take(static_cast<std::size_t>(depth));
}

// ---- E_M construction ----

void validate(const EMSpec& spec)
{
    if (spec.M < 1) throw DomainError("filler bound M must be >= 1");
    if (const auto* c = std::get_if<PsiConstant>(&spec.psi); c && c->value.sign() <= 0)
        throw DomainError("psi must be positive");
    // evaluating once surfaces parameter errors of the family
    (void)eval_growth(spec.phi, 1, 64);
}

namespace {

// Magnitude-aware evaluation of phi: absolute error well below one unit.
BigReal phi_at(const GrowthFunction& phi, long n, long p)
{
    const BigReal coarse = eval_growth(phi, n, 64);
    const long mag = std::max<long>(0, mpfr_get_exp(coarse.upper().get()));
    return eval_growth(phi, n, p + mag + 8);
}

// a >= b with escalation; exact ties count as >=.
bool certified_ge(const RealProducer& a, const RealProducer& b)
{
    for (long p : PrecisionSchedule{}.steps()) {
        const BigReal x = a(p);
        const BigReal y = b(p);
        if (mpfr_greaterequal_p(x.lower().get(), y.upper().get())) return true;
        if (mpfr_less_p(x.upper().get(), y.lower().get())) return false;
    }
    throw PrecisionExhausted("comparison undecided at 8192 bits");
}

BigReal eps_at(const PsiFunction& psi, long k, long p)
{
    const BigReal e = eval_psi(psi, BigInt(k), p);
    if (!e.certainly_positive()) throw DomainError("psi(" + std::to_string(k) + ") is not positive");
    return e;
}

// Walks n_1 < n_2 < ... lazily.
class EMIndexer {
public:
    explicit EMIndexer(EMSpec spec) : spec_(std::move(spec)) {}

    EMIndex advance()
    {
        const GrowthFunction& phi = spec_.phi;
        long n;
        if (k_ == 0) {
            n = 1;
            const RealProducer one = [](long p) { return BigReal::exact(1, p); };
            while (!certified_ge([&](long p) { return phi_at(phi, n, p); }, one)) {
                if (++n > 100'000'000) throw DomainError("phi stays below 1");
            }
        } else {
            const long prev = n_;
            const long km1 = k_;
            const RealProducer threshold = [&](long p) {
                return (BigReal::exact(1, p) + eps_at(spec_.psi, km1, p)) * phi_at(phi, prev, p);
            };
            n = prev + 1;
            while (!certified_ge([&](long p) { return phi_at(phi, n, p); }, threshold)) ++n;
        }
        const long k = k_ + 1;
        const BigInt fl = certified_floor(
            [&](long p) { return (BigReal::exact(1, p) + eps_at(spec_.psi, k, p)) * phi_at(phi, n, p); });
        EMIndex out{k, n, fl, k == 1 ? BigInt(fl + 1) : BigInt(fl - floor_ + 1)};
        if (out.digit < 1) throw DomainError("non-positive large digit; is phi increasing?");
        k_ = k;
        n_ = n;
        floor_ = fl;
        return out;
    }

    const EMSpec& spec() const { return spec_; }

private:
    EMSpec spec_;
    long k_ = 0;
    long n_ = 0;
    BigInt floor_{0};
};

BigInt filler(const EMSpec& spec, long i)
{
    if (spec.filler == FillerPolicy::cycle) return BigInt((i - 1) % spec.M + 1);
    Engine engine(derive_seed(spec.seed, static_cast<std::uint64_t>(i)));
    return uniform_integer(engine, BigInt(1), BigInt(spec.M));
}

class EMGenerator final : public DigitGenerator {
public:
    explicit EMGenerator(const EMSpec& spec) : indexer_(spec), next_(indexer_.advance()) {}
    BigInt digit(long n) override
    {
        if (n == next_.n) {
            BigInt a = next_.digit;
            next_ = indexer_.advance();
            return a;
        }
        return filler(indexer_.spec(), n);
    }
    std::unique_ptr<DigitGenerator> clone() const override { return std::make_unique<EMGenerator>(*this); }

private:
    EMIndexer indexer_;
    EMIndex next_;
};

} // namespace

long EMIndexMap::r(long n) const
{
    if (n > n_max) throw DomainError("r(n) requested beyond the index map horizon");
    const auto it = std::upper_bound(entries.begin(), entries.end(), n,
                                     [](long v, const EMIndex& e) { return v < e.n; });
    return static_cast<long>(it - entries.begin());
}

EMIndexMap em_index_map(const EMSpec& spec, long n_max)
{
    validate(spec);
    if (n_max < 1) throw DomainError("index map horizon must be >= 1");
    EMIndexMap map;
    map.n_max = n_max;
    EMIndexer indexer(spec);
    for (EMIndex e = indexer.advance(); e.n <= n_max; e = indexer.advance()) map.entries.push_back(e);
    return map;
}

DigitStream stream_EM(const EMSpec& spec)
{
    validate(spec);
    return {std::make_unique<EMGenerator>(spec), Provenance::SetEM, to_json(spec)};
}

std::vector<LipschitzRow> em_lipschitz_diagnostics(const EMSpec& spec, const std::vector<long>& depths)
{
    if (depths.empty()) throw DomainError("no depths given");
    if (!std::is_sorted(depths.begin(), depths.end()) || depths.front() < 1)
        throw DomainError("depths must be positive and sorted increasing");
    const EMIndexMap map = em_index_map(spec, depths.back());
    std::vector<LipschitzRow> rows;
    for (long n : depths) {
        const long r = map.r(n);
        double log_prod = 0;
        for (long k = 0; k < r; ++k) {
            long e = 0;
            const double m = mpz_get_d_2exp(&e, map.entries[static_cast<std::size_t>(k)].digit.get_mpz_t());
            log_prod += std::log(m) + static_cast<double>(e) * std::log(2.0);
        }
        rows.push_back({n, r, static_cast<double>(r) / static_cast<double>(n), log_prod / static_cast<double>(n)});
    }
    return rows;
}

std::vector<MembershipRow> membership_diagnostics(DigitStream stream, const GrowthFunction& phi,
                                                  const std::optional<ExactRational>& gamma_T,
                                                  const std::vector<long>& depths, long precision)
{
    if (stream.index() != 0) throw DomainError("membership diagnostics need a fresh stream");
    if (depths.empty()) throw DomainError("no depths given");
    for (std::size_t i = 0; i < depths.size(); ++i)
        if (depths[i] < 1 || (i > 0 && depths[i] <= depths[i - 1]))
            throw DomainError("depths must be positive and strictly increasing");
    std::vector<MembershipRow> rows;
    BigInt S = 0, T = 0;
    for (long n : depths) {
        while (stream.index() < n) {
            const BigInt a = stream.next();
            S += a;
            if (a > T) T = a;
        }
        MembershipRow row{n, S, T, BigReal::exact(S, precision + 8) / phi_at(phi, n, precision), std::nullopt};
        if (gamma_T) row.T_over_exp = BigReal::exact(T, precision + 8) / phi_at(ExpPower{*gamma_T}, n, precision);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- serialisation ----

nlohmann::json to_json(const WindowSpec& spec)
{
    return {{"gamma", spec.gamma.to_string()},
            {"lower", to_string(spec.lower)},
            {"upper", to_string(spec.upper)},
            {"start", spec.start}};
}

WindowSpec window_spec_from_json(const nlohmann::json& j)
{
    try {
        WindowSpec spec{ExactRational::parse(j.at("gamma").get<std::string>()),
                        parse_bound(j.at("lower").get<std::string>()), parse_bound(j.at("upper").get<std::string>()),
                        j.value("start", 1L)};
        validate(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("window spec: ") + e.what());
    }
}

nlohmann::json to_json(const EMSpec& spec)
{
    return {{"phi", to_string(spec.phi)},
            {"psi", to_string(spec.psi)},
            {"M", spec.M},
            {"filler", spec.filler == FillerPolicy::cycle ? "cycle" : "random"},
            {"seed", spec.seed}};
}

EMSpec em_spec_from_json(const nlohmann::json& j)
{
    try {
        EMSpec spec;
        spec.phi = parse_growth(j.at("phi").get<std::string>());
        spec.psi = parse_psi(j.value("psi", std::string("invlog")));
        spec.M = j.value("M", 2L);
        const std::string f = j.value("filler", std::string("cycle"));
        if (f != "cycle" && f != "random") throw DomainError("filler must be cycle or random");
        spec.filler = f == "cycle" ? FillerPolicy::cycle : FillerPolicy::random;
        spec.seed = j.value("seed", std::uint64_t{0});
        validate(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("EM spec: ") + e.what());
    }
}

} // namespace cfdim
