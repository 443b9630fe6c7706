#include "cfdim/cf/cylinder.hpp"
#include "cfdim/cf/expansion.hpp"
#include "cfdim/cf/khintchine.hpp"
#include "cfdim/cf/stats.hpp"
#include "cfdim/cli/cli.hpp"
#include "cfdim/comp/composition.hpp"
#include "cfdim/construct/stream.hpp"
#include "cfdim/construct/window.hpp"
#include "cfdim/dimlab/cover.hpp"
#include "cfdim/dimlab/profile.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/ifs/system.hpp"
#include "cfdim/numerics/certified.hpp"
#include "cfdim/numerics/zeta.hpp"

#include <cmath>
#include <map>

namespace cfdim::cli {

namespace {

using Row = std::vector<std::string>;

std::string str(long v) { return std::to_string(v); }
std::string str(const BigInt& v) { return v.get_str(); }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

PrecisionSchedule schedule_of(const Params& p)
{
    const long prec = p.config().precision;
    return {prec, std::max(prec, 8192L)};
}

// A point of (0,1): an exact rational, or the fractional part of sqrt:<n>, e or pi.
struct PointSpec {
    std::optional<ExactRational> exact;
    RealProducer real;
    std::string text;
};

PointSpec read_point(const Params& p, const std::string& name)
{
    return p.convert(name, [](const std::string& s) {
        PointSpec pt;
        pt.text = s;
        if (s == "e") {
            pt.real = [](long prec) { return const_e(prec) - BigReal::exact(2, prec); };
        } else if (s == "pi") {
            pt.real = [](long prec) { return const_pi(prec) - BigReal::exact(3, prec); };
        } else if (s.rfind("sqrt:", 0) == 0) {
            const ExactRational r = ExactRational::parse(s.substr(5));
            if (r.sign() <= 0) throw DomainError("sqrt argument must be positive");
            const BigReal probe = sqrt(BigReal::exact(r, 256));
            BigInt fl;
            if (!try_floor(probe, fl)) throw DomainError("sqrt of a square has no fractional part");
            const BigInt whole = fl;
            pt.real = [r, whole](long prec) { return sqrt(BigReal::exact(r, prec)) - BigReal::exact(whole, prec); };
        } else {
            pt.exact = ExactRational::parse(s);
        }
        return pt;
    });
}

// ---- windows and streams shared by window, construct, diagnose and dimension-estimate

const std::vector<ParamSpec> kWindowParams = {
    {"gamma", "1", "exponent gamma of e^{n^gamma}"},
    {"lower", "", "lower bound c1(n): const:<c>, increment-ratio, one-minus-inverse:<a> (default per set)"},
    {"upper", "", "upper bound c2(n): const:<c>, scaled-increment-ratio, lower-plus-exp-gap:<r> (default per set)"},
    {"start", "auto", "first constrained index, or auto"},
    {"horizon", "1000", "search horizon for an automatic start on time-varying windows"},
    {"alpha", "1", "alpha of the largest-digit set F"},
};

struct WindowInput {
    std::string set;
    ExactRational gamma;
    std::optional<BoundFn> lower;
    std::optional<BoundFn> upper;
    std::optional<long> start;
    long horizon = 1000;
    ExactRational alpha;
};

WindowInput read_window(const Params& p, const std::string& set)
{
    WindowInput w;
    w.set = set;
    w.gamma = p.rational("gamma");
    if (p.has("lower")) w.lower = p.convert("lower", [](const std::string& s) { return parse_bound(s); });
    if (p.has("upper")) w.upper = p.convert("upper", [](const std::string& s) { return parse_bound(s); });
    if (p.text("start") != "auto") w.start = p.integer("start");
    w.horizon = p.integer("horizon");
    w.alpha = p.rational("alpha");
    return w;
}

WindowSpec build_window(const WindowInput& w)
{
    WindowSpec spec;
    if (w.set == "F") {
        if (w.lower || w.upper) throw DomainError("set F fixes its window bounds; use --alpha");
        spec = f_window_spec(w.gamma, w.alpha);
        if (w.start) spec.start = *w.start;
        return spec;
    }
    const bool b = w.set == "B";
    spec.gamma = w.gamma;
    spec.lower = w.lower ? *w.lower : (b ? BoundFn{BoundIncrementRatio{}} : BoundFn{BoundConstant{ExactRational(1)}});
    spec.upper = w.upper ? *w.upper
                         : (b ? BoundFn{BoundScaledIncrementRatio{}} : BoundFn{BoundConstant{ExactRational(2)}});
    validate(spec);
    if (w.start) {
        spec.start = *w.start;
    } else {
        const auto* c1 = std::get_if<BoundConstant>(&spec.lower);
        const auto* c2 = std::get_if<BoundConstant>(&spec.upper);
        spec.start = (c1 && c2) ? n_zero(spec.gamma, c1->value, c2->value) : first_stable_start(spec, w.horizon);
    }
    return spec;
}

std::pair<ExactRational, ExactRational> constant_bounds(const WindowSpec& spec)
{
    const auto* c1 = std::get_if<BoundConstant>(&spec.lower);
    const auto* c2 = std::get_if<BoundConstant>(&spec.upper);
    if (!c1 || !c2) throw DomainError("this set needs constant window bounds");
    return {c1->value, c2->value};
}

const std::vector<ParamSpec> kEMParams = {
    {"phi", "", "growth target: exp-power:<g>, exp-sqrt-psi:invlog, exp-geom:<g>, poly:<g>, linear:<g>"},
    {"psi", "invlog", "slack sequence eps_k for E_M: invlog or const:<c>"},
    {"M", "2", "filler digits are at most M"},
    {"filler", "cycle", "filler digits: cycle or random"},
    {"policy", "min", "digit inside a window: min, mid, random or random:<seed>"},
};

std::vector<ParamSpec> concat(std::vector<ParamSpec> a, const std::vector<ParamSpec>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

struct StreamInput {
    WindowInput window;
    std::optional<GrowthFunction> phi;
    EMSpec em;
    DigitPolicy policy;
    std::uint64_t seed = 0;
};

StreamInput read_stream(const Params& p, const std::string& set)
{
    static const std::vector<std::string> sets = {"A", "B", "EM", "F", "mu"};
    if (std::find(sets.begin(), sets.end(), set) == sets.end())
        throw ConfigError("set must be one of A, B, EM, F, mu; got '" + set + "'");
    StreamInput in;
    in.window = read_window(p, set);
    if (p.has("phi")) in.phi = p.growth("phi");
    in.em.phi = in.phi ? *in.phi : GrowthFunction{ExpPower{ExactRational(2, 5)}};
    in.em.psi = p.convert("psi", [](const std::string& s) { return parse_psi(s); });
    in.em.M = p.integer("M");
    const std::string filler = p.text("filler");
    if (filler == "cycle")
        in.em.filler = FillerPolicy::cycle;
    else if (filler == "random")
        in.em.filler = FillerPolicy::random;
    else
        throw ConfigError("filler must be cycle or random");
    in.em.seed = p.config().seed;
    in.seed = p.config().seed;
    const std::string pol = p.text("policy") == "random" ? "random:" + std::to_string(in.seed) : p.text("policy");
    in.policy = p.convert("policy", [&](const std::string&) { return parse_policy(pol); });
    return in;
}

struct BuiltStream {
    DigitStream stream;
    std::optional<WindowSpec> window;
};

BuiltStream build_stream(const StreamInput& in, long depth)
{
    const std::string& set = in.window.set;
    if (set == "EM") return {stream_EM(in.em), std::nullopt};
    const WindowSpec spec = build_window(in.window);
    if (set == "A") return {stream_A(spec, in.policy), spec};
    if (set == "B") return {stream_B(spec, in.policy), spec};
    if (set == "F") return {stream_F(spec.gamma, in.window.alpha, in.policy), spec};
    // mu: a sampled word wrapped as a stream
    const auto [c1, c2] = constant_bounds(spec);
    struct Fixed final : DigitGenerator {
        DigitWord word;
        explicit Fixed(DigitWord w) : word(std::move(w)) {}
        BigInt digit(long n) override
        {
            if (n > static_cast<long>(word.size())) throw DomainError("sampled word is shorter than requested");
            return word[static_cast<std::size_t>(n - 1)];
        }
        std::unique_ptr<DigitGenerator> clone() const override { return std::make_unique<Fixed>(word); }
    };
    DigitWord w = sample_mu(spec.gamma, c1, c2, spec.start, depth, in.seed);
    nlohmann::json params = to_json(spec);
    params["seed"] = in.seed;
    return {DigitStream(std::make_unique<Fixed>(std::move(w)), Provenance::MeasureMu, params), spec};
}

// ---- handlers

Table cmd_zeta(const Params& p)
{
    const auto ts = p.rationals("t");
    const long prec = p.config().precision;
    Table t{{}, {"t", "value", "radius", "precision"}, {}};
    for (const auto& x : ts) {
        const BigReal z = zeta(x, prec);
        t.rows.push_back({format_exact(x), format_center(z), format_radius(z), str(prec)});
    }
    return t;
}

Table cmd_growth(const Params& p)
{
    const GrowthFunction phi = p.growth("phi");
    const auto ns = p.integers("n");
    const long prec = p.config().precision;
    const auto sched = schedule_of(p);
    Table t{{{"phi", to_string(phi)}}, {"n", "value", "radius", "floor", "precision"}, {}};
    for (long n : ns) {
        const BigReal v = eval_growth(phi, n, prec);
        const BigInt fl = certified_floor([&](long q) { return eval_growth(phi, n, q); }, sched);
        t.rows.push_back({str(n), format_center(v), format_radius(v), str(fl), str(prec)});
    }
    return t;
}

Table cmd_expand(const Params& p)
{
    const PointSpec x = read_point(p, "x");
    const long depth = p.integer("depth");
    if (depth < 1) throw ConfigError("depth must be >= 1");
    const Expansion e = x.exact ? expand(*x.exact, static_cast<std::size_t>(depth))
                                : expand(x.real, static_cast<std::size_t>(depth), schedule_of(p));
    const auto conv = convergents(e.word);
    const auto st = stats(e.word);
    Table t{{{"result", e.word.to_string() + (e.terminated ? " (terminated)" : "")}},
            {"n", "a_n", "p_n", "q_n", "S_n", "T_n"},
            {}};
    for (std::size_t k = 0; k < e.word.size(); ++k)
        t.rows.push_back({str(static_cast<long>(k + 1)), str(e.word[k]), str(conv[k].p), str(conv[k].q),
                          str(st.sums[k]), str(st.maxima[k])});
    return t;
}

Table cmd_cylinder(const Params& p)
{
    const DigitWord w = p.convert("word", [](const std::string& s) { return DigitWord::parse(s); });
    Table t{{}, {"n", "a_n", "left", "right", "length", "length_lower_bound", "length_upper_bound"}, {}};
    for (std::size_t k = 1; k <= w.size(); ++k) {
        const DigitWord pre = w.prefix(k);
        const Cylinder c = cylinder(pre);
        t.rows.push_back({str(static_cast<long>(k)), str(w[k - 1]), format_exact(c.left), format_exact(c.right),
                          format_exact(c.length()), format_exact(cylinder_length_lower_bound(pre)),
                          format_exact(cylinder_length_upper_bound(pre))});
    }
    const Cylinder c = cylinder(w);
    t.summary.push_back({"cylinder", "(" + format_exact(c.left) + ", " + format_exact(c.right) + ")"});
    return t;
}

Table cmd_khintchine(const Params& p)
{
    const long samples = p.integer("samples");
    const auto depths = p.integers("depths");
    const long threads = p.integer("threads");
    if (samples < 1 || threads < 0) throw ConfigError("samples must be >= 1 and threads >= 0");
    Table t{{{"target", format_double(1 / std::log(2.0))}},
            {"depth", "samples", "min", "lower_quartile", "median", "upper_quartile", "max"},
            {}};
    for (long d : depths) {
        if (d < 1) throw ConfigError("depths must be positive");
        const auto s = khintchine_mc(static_cast<std::size_t>(samples), static_cast<std::size_t>(d),
                                     p.config().seed, static_cast<unsigned>(threads));
        t.rows.push_back({str(d), str(samples), format_double(s.min), format_double(s.lower_quartile),
                          format_double(s.median), format_double(s.upper_quartile), format_double(s.max)});
    }
    return t;
}

Table cmd_composition(const Params& p)
{
    const ExactRational tt = p.rational("t");
    const long n = p.integer("n");
    const long m_max = p.integer("m-max");
    const long prec = p.config().precision;
    if (n < 1 || m_max < n) throw DomainError("need 1 <= n <= m-max");
    const bool has_bound = tt > ExactRational(1);
    Table t{{}, {"m", "sum", "radius", "bound", "ratio", "precision"}, {}};
    t.summary.push_back(
        {"bound_constant", has_bound ? format_center(generalized_bound_constant(tt, prec)) : "undefined for t <= 1"});
    for (long m = n; m <= m_max; ++m) {
        const BigReal g = composition_sum({m, n, tt}, prec);
        std::string bound, ratio;
        if (has_bound) {
            const BigReal b = lemma_bound({m, n, tt}, prec);
            bound = format_center(b);
            ratio = format_double(g.center_double() / b.center_double());
        }
        t.rows.push_back({str(m), format_center(g), format_radius(g), bound, ratio, str(prec)});
    }
    return t;
}

Table cmd_lemma_verify(const Params& p)
{
    LemmaGrid grid;
    grid.m_max = p.integer("m-max");
    grid.n_max = p.integer("n-max");
    grid.s_values = p.rationals("s");
    grid.exponent_scale = p.rational("scale");
    const bool points = p.flag("points");
    const LemmaReport r = verify_lemma(grid, p.config().precision, points);
    Table t{{{"violations", str(static_cast<long>(r.violations.size()))},
             {"checked", str(static_cast<long>(r.checked))},
             {"max_ratio", format_double(r.max_ratio)},
             {"max_ratio_at", "m=" + str(r.max_ratio_m) + " n=" + str(r.max_ratio_n) + " s=" +
                                  format_exact(r.max_ratio_s)}},
            {"m", "n", "s", "lhs", "rhs", "ratio", "violation"},
            {}};
    auto add = [&](const LemmaPoint& q, bool v) {
        t.rows.push_back({str(q.m), str(q.n), format_exact(q.s), format_center(q.lhs), format_center(q.rhs),
                          format_double(q.ratio), yes_no(v)});
    };
    if (points)
        for (const auto& q : r.points) add(q, certainly_greater(q.lhs, q.rhs));
    else
        for (const auto& q : r.violations) add(q, true);
    return t;
}

Table cmd_window(const Params& p)
{
    const std::string set = p.text("set");
    if (set != "A" && set != "B" && set != "F") throw ConfigError("window set must be A, B or F");
    const WindowInput in = read_window(p, set);
    const long from = p.integer("from");
    const long to = p.integer("to");
    const long check_horizon = p.integer("check-horizon");
    if (from < 1 || to < from) throw ConfigError("need 1 <= from <= to");
    const WindowSpec spec = build_window(in);
    Table t{{{"lower", to_string(spec.lower)}, {"upper", to_string(spec.upper)}, {"start", str(spec.start)}},
            {"n", "lo", "hi", "count"},
            {}};
    if (const auto* c1 = std::get_if<BoundConstant>(&spec.lower))
        if (const auto* c2 = std::get_if<BoundConstant>(&spec.upper))
            t.summary.push_back({"n_zero", str(n_zero(spec.gamma, c1->value, c2->value))});
    if (check_horizon > 0) {
        const auto rep = check_B_assumptions(spec, check_horizon);
        for (const auto& c : rep.checks) {
            const auto& last = c.samples.back();
            t.summary.push_back({"check " + c.name, std::string(c.pass ? "pass" : "fail") + " (n=" +
                                                        str(last.first) + " value=" + format_double(last.second) +
                                                        ")"});
        }
    }
    const auto sched = schedule_of(p);
    for (long n = std::max(from, spec.start); n <= to; ++n) {
        const DigitWindow w = digit_window(spec, n, sched);
        t.rows.push_back({str(n), str(w.lo), str(w.hi), str(w.count())});
    }
    return t;
}

const std::vector<ParamSpec> kStreamParams = concat(kWindowParams, kEMParams);

Table cmd_construct(const Params& p)
{
    const std::string set = p.text("set");
    const StreamInput in = read_stream(p, set);
    const long depth = p.integer("depth");
    if (depth < 1) throw ConfigError("depth must be >= 1");
    BuiltStream b = build_stream(in, depth);
    const DigitWord w = b.stream.take(static_cast<std::size_t>(depth));
    const auto st = stats(w);
    Table t{{{"provenance", to_string(b.stream.provenance())}, {"parameters", b.stream.parameters().dump()}},
            {"n", "a_n", "S_n", "T_n"},
            {}};
    std::map<long, long> large;
    if (set == "EM") {
        const EMIndexMap map = em_index_map(in.em, depth);
        for (const auto& e : map.entries) large[e.n] = e.k;
        t.summary.push_back({"r(depth)", str(map.r(depth))});
        t.columns.push_back("k");
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        const long n = static_cast<long>(i + 1);
        Row row{str(n), str(w[i]), str(st.sums[i]), str(st.maxima[i])};
        if (set == "EM") row.push_back(large.count(n) ? str(large[n]) : "");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_diagnose(const Params& p)
{
    const std::string set = p.text("set");
    const StreamInput in = read_stream(p, set);
    const auto depths = p.integers("depths");
    std::optional<ExactRational> gamma_T;
    if (p.text("gamma-t") == "auto") {
        if (set == "F") gamma_T = in.window.gamma;
    } else if (p.text("gamma-t") != "none") {
        gamma_T = p.rational("gamma-t");
    }
    if (depths.empty()) throw ConfigError("no depths");
    const GrowthFunction phi = in.phi ? *in.phi : GrowthFunction{ExpPower{in.window.gamma}};
    BuiltStream b = build_stream(in, depths.back());
    const auto rows = membership_diagnostics(std::move(b.stream), set == "EM" ? in.em.phi : phi, gamma_T, depths,
                                             p.config().precision);
    Table t{{{"phi", to_string(set == "EM" ? in.em.phi : phi)}},
            {"n", "S_n", "T_n", "S_over_phi", "S_over_phi_radius", "T_over_exp", "precision"},
            {}};
    std::vector<LipschitzRow> lip;
    if (set == "EM") {
        lip = em_lipschitz_diagnostics(in.em, depths);
        for (const char* c : {"r", "r_over_n", "log_product_over_n"}) t.columns.push_back(c);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        Row row{str(r.n), str(r.S), str(r.T), format_center(r.S_over_phi), format_radius(r.S_over_phi),
                r.T_over_exp ? format_center(*r.T_over_exp) : "", str(p.config().precision)};
        if (set == "EM") {
            row.push_back(str(lip[i].r));
            row.push_back(format_double(lip[i].r_over_n));
            row.push_back(format_double(lip[i].log_product_over_n));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_cover_sum(const Params& p)
{
    CoverScheme s;
    s.gamma = p.rational("gamma");
    s.eps = p.rational("eps");
    s.subsequence = p.convert("subsequence", [](const std::string& x) { return parse_subsequence(x); });
    s.L = p.rational("L");
    s.s = p.rational("s");
    s.k_max = p.integer("k-max");
    const long prec = p.config().precision;
    const CoverSumResult r = cover_sum_terms(s, prec);
    Table t{{{"bounded_trend", yes_no(r.bounded_trend)},
             {"crossover", r.crossover ? str(*r.crossover) : "none"},
             {"projected_crossover", r.projected_crossover ? format_double(*r.projected_crossover) : "none"}},
            {"ell", "n", "delta", "log_factor", "log_product", "precision"},
            {}};
    for (const auto& row : r.rows)
        t.rows.push_back({str(row.ell), str(row.n), format_double(row.delta), format_center(row.log_factor),
                          format_center(row.log_product), str(prec)});
    return t;
}

Table cmd_solve_sl(const Params& p)
{
    const auto Ls = p.rationals("L");
    const long bits = p.integer("bits");
    if (bits < 1 || bits > 200) throw ConfigError("bits must be in [1, 200]");
    Table t{{}, {"L", "s_lo", "s_hi", "s_L", "width"}, {}};
    for (const auto& L : Ls) {
        const SLRoot r = solve_sL(L, bits);
        t.rows.push_back({format_exact(L), format_exact(r.lo), format_exact(r.hi), format_double(r.value()),
                          format_double(r.width().to_double())});
    }
    return t;
}

Table cmd_profile(const Params& p)
{
    ProfileQuery q;
    q.tag = p.convert("tag", [](const std::string& s) { return parse_growth_tag(s); });
    q.gamma = p.rational("gamma");
    q.d = p.rational("d");
    q.n_max = p.integer("n-max");
    const long every = p.integer("every");
    if (every < 1) throw ConfigError("every must be >= 1");
    const long prec = p.config().precision;
    const auto rows = local_dimension_profile(q, prec);
    Table t{{{"limit", format_center(profile_limit(q, prec))}}, {"n", "exact", "value", "radius", "precision"}, {}};
    for (const auto& r : rows)
        if (r.n % every == 0 || r.n == q.n_max)
            t.rows.push_back({str(r.n), r.exact ? format_exact(*r.exact) : "", format_center(r.value),
                              format_radius(r.value), str(prec)});
    return t;
}

Table cmd_dimension_estimate(const Params& p)
{
    const std::string set = p.text("set");
    if (set != "A" && set != "B" && set != "F") throw ConfigError("set must be A, B or F");
    const WindowInput in = read_window(p, set);
    const auto depths = p.integers("depths");
    FiniteDepthMethod m;
    const std::string method = p.text("method");
    if (method == "midpoint")
        m.kind = FiniteDepthMethod::Kind::midpoint;
    else if (method == "sampled")
        m.kind = FiniteDepthMethod::Kind::sampled;
    else
        throw ConfigError("method must be midpoint or sampled");
    m.samples = p.integer("samples");
    m.seed = p.config().seed;
    const WindowSpec spec = build_window(in);
    Table t{{{"start", str(spec.start)}}, {"depth", "log_count", "log_length", "estimate"}, {}};
    for (long d : depths) {
        const auto e = finite_depth_dimension(spec, d, m);
        t.rows.push_back({str(e.depth), format_double(e.log_count), format_double(e.log_length),
                          format_double(e.estimate)});
    }
    return t;
}

Table cmd_figure1(const Params& p)
{
    const auto gammas = p.convert("gamma-grid", [](const std::string& s) { return parse_grid(s); });
    const auto data = figure1_data(gammas);
    Table t{{}, {"gamma", "exp_power", "poly", "exp_geom", "note"}, {}};
    for (const auto& g : gammas) {
        Row row{format_exact(g), "", "", "", ""};
        for (const auto& r : data) {
            if (r.gamma != g) continue;
            const std::size_t col = r.family == "exp-power" ? 1 : (r.family == "poly" ? 2 : 3);
            row[col] = format_exact(r.dim);
            if (!r.note.empty()) row[4] = r.note;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_ifs(const Params& p)
{
    const std::string action = p.text("action");
    const std::string model = p.text("model");
    if (model != "affine" && model != "gauss") throw ConfigError("model must be affine or gauss");
    const ExactRational d = model == "gauss" ? ExactRational(2) : p.rational("d");
    const long check_limit = p.integer("check-limit");
    const long depth = p.integer("depth");
    // f_w(1) is the limit-point convention; expanding from a word needs an interior point
    const ExactRational tail = p.text("tail") != "auto" ? p.rational("tail")
                               : (action == "expand" ? ExactRational(1, 2) : ExactRational(1));
    const long prec = p.config().precision;

    auto system = [&]() -> std::shared_ptr<DDecayingSystem> {
        if (model == "gauss") return gauss_as_ddecaying();
        return std::make_shared<AffineGaussLike>(d);
    };

    if (action == "build") {
        ConditionReport rep;
        Table t{{{"model", model}, {"d", format_exact(d)}}, {"k", "check", "pass", "detail"}, {}};
        std::shared_ptr<DDecayingSystem> sys;
        if (model == "affine") {
            auto a = build_affine(d, prec, check_limit);
            rep = a->report();
            sys = a;
        } else {
            sys = gauss_as_ddecaying();
            rep = check_conditions(*sys, check_limit, prec);
            t.summary.push_back({"pair_contraction_sup", format_double(pair_contraction_sup(*sys))});
        }
        t.summary.push_back({"contraction_step", str(sys->contraction_step())});
        t.summary.push_back({"contraction_bound", format_center(sys->contraction_bound(prec))});
        t.summary.push_back({"all_pass", yes_no(rep.all_pass())});
        for (std::size_t k = 0; k < rep.checks.size(); ++k) {
            const auto& c = rep.checks[k];
            t.rows.push_back({str(static_cast<long>(k + 1)), c.name, yes_no(c.pass), c.detail});
        }
        return t;
    }
    if (action == "project") {
        const DigitWord w = p.convert("word", [](const std::string& s) { return DigitWord::parse(s); });
        const auto sys = system();
        Table t{{}, {"k", "value", "radius", "precision"}, {}};
        for (std::size_t k = 1; k <= w.size(); ++k) {
            const BigReal x = project(*sys, w.prefix(k), prec, tail);
            t.rows.push_back({str(static_cast<long>(k)), format_center(x), format_radius(x), str(prec)});
        }
        t.summary.push_back({"value", t.rows.back()[1]});
        return t;
    }
    if (action == "expand") {
        if (depth < 1) throw ConfigError("depth must be >= 1");
        const auto sys = system();
        RealProducer x;
        if (p.has("word")) {
            if (p.has("x")) throw ConfigError("give either --x or --word");
            const DigitWord w = p.convert("word", [](const std::string& s) { return DigitWord::parse(s); });
            x = [sys, w, tail](long q) { return project(*sys, w, q, tail); };
        } else {
            const PointSpec pt = read_point(p, "x");
            x = pt.exact ? RealProducer([v = *pt.exact](long q) { return BigReal::exact(v, q); }) : pt.real;
        }
        const DigitWord w = symbolic_expand(*sys, x, static_cast<std::size_t>(depth), schedule_of(p));
        Table t{{{"result", w.to_string()}}, {"n", "a_n"}, {}};
        for (std::size_t k = 0; k < w.size(); ++k) t.rows.push_back({str(static_cast<long>(k + 1)), str(w[k])});
        return t;
    }
    if (action == "predict") {
        const GrowthFunction phi = p.growth("phi");
        const long profile_n = p.integer("profile-n");
        const DimensionPrediction pr = predicted_dimension(d, phi, profile_n);
        Table t{{{"value", format_exact(pr.value)}, {"regime", pr.regime}}, {"n", "value", "radius"}, {}};
        for (const auto& r : pr.profile)
            t.rows.push_back({str(r.n), format_center(r.value), format_radius(r.value)});
        return t;
    }
    throw ConfigError("ifs action must be build, project, expand or predict");
}

std::vector<CommandSpec> make_registry()
{
    std::vector<CommandSpec> r;
    r.push_back({"zeta", "Riemann zeta enclosures", {{"t", "2,3", "exponents t > 1, comma separated"}},
                 {"numerics::zeta"}, cmd_zeta});
    r.push_back({"growth",
                 "Growth function values and certified floors",
                 {{"phi", "", "growth function, e.g. exp-power:0.6", false, true},
                  {"n", "1,10,100", "indices, comma separated"}},
                 {"numerics::eval_growth", "numerics::certified_floor"},
                 cmd_growth});
    r.push_back({"expand",
                 "Partial quotients, convergents and running sums of a point",
                 {{"x", "", "point in (0,1): p/q, decimal, sqrt:<n>, e or pi (fractional part)", false, true},
                  {"depth", "10", "number of digits"}},
                 {"cf-core::expand", "cf-core::convergents", "cf-core::stats"},
                 cmd_expand});
    r.push_back({"cylinder",
                 "Basic intervals of a word and their length bounds",
                 {{"word", "", "digits, e.g. [1,2,3]", false, true}},
                 {"cf-core::cylinder"},
                 cmd_cylinder});
    r.push_back({"khintchine",
                 "Monte Carlo distribution of S_n/(n ln n)",
                 {{"samples", "1000", "number of random points"},
                  {"depths", "1000", "depths n, comma separated"},
                  {"threads", "0", "worker threads (0: hardware); does not change the output"}},
                 {"cf-core::khintchine_mc"},
                 cmd_khintchine});
    r.push_back({"composition",
                 "Composition sums against the lemma bound",
                 {{"t", "2", "exponent t"}, {"n", "3", "number of parts"}, {"m-max", "20", "largest m"}},
                 {"comp-bounds::composition_sum", "comp-bounds::lemma_bound",
                  "comp-bounds::generalized_bound_constant"},
                 cmd_composition});
    r.push_back({"lemma-verify",
                 "Checks the composition bound on a grid",
                 {{"m-max", "60", "largest m"},
                  {"n-max", "12", "largest n"},
                  {"s", "0.55,0.65,0.75,0.85,0.95", "values of s, comma separated"},
                  {"scale", "2", "exponent t = scale * s"},
                  {"points", "false", "emit every grid point, not only violations"}},
                 {"comp-bounds::verify_lemma"},
                 cmd_lemma_verify});
    r.push_back({"window",
                 "Admissible digit windows",
                 concat({{"set", "A", "window family: A, B or F"}},
                        concat(kWindowParams, {{"from", "1", "first index"},
                                               {"to", "20", "last index"},
                                               {"check-horizon", "0", "sample the B hypotheses up to this n"}})),
                 {"constructors::n_zero", "constructors::digit_window", "constructors::check_B_assumptions"},
                 cmd_window});
    r.push_back({"construct",
                 "Digits of a constructed point",
                 concat({{"set", "", "A, B, EM, F or mu", true, true}},
                        concat(kStreamParams, {{"depth", "20", "number of digits"}})),
                 {"constructors::stream_B", "constructors::stream_A", "constructors::stream_F",
                  "constructors::sample_mu", "constructors::stream_EM"},
                 cmd_construct});
    r.push_back({"diagnose",
                 "Membership ratios S_n/phi(n) and T_n/e^{n^gamma} of a constructed point",
                 concat({{"set", "", "A, B, EM, F or mu", true, true}},
                        concat(kStreamParams, {{"depths", "100,300,500", "depths, strictly increasing"},
                                               {"gamma-t", "auto", "gamma for T_n, none, or auto (F only)"}})),
                 {"constructors::membership_diagnostics"},
                 cmd_diagnose});
    r.push_back({"cover-sum",
                 "Factors of the cover-sum upper bound",
                 {{"gamma", "3/4", "gamma"},
                  {"eps", "1/10", "window slack"},
                  {"subsequence", "power-gamma", "power-gamma, square-over-l or largest-quotient"},
                  {"L", "10", "L for square-over-l"},
                  {"s", "3/5", "exponent s in (1/2, 1)"},
                  {"k-max", "200", "number of blocks"}},
                 {"dimension-lab::cover_sum_terms"},
                 cmd_cover_sum});
    r.push_back({"solve-sl",
                 "Root s_L of log((9/2)(2 + zeta(2s))) = (2s - 1) L / 2",
                 {{"L", "20,50,100,1000,10000", "values of L, comma separated"},
                  {"bits", "40", "bracket width 2^-bits"}},
                 {"dimension-lab::solve_sL"},
                 cmd_solve_sl});
    r.push_back({"profile",
                 "Local dimension profile rho(n)",
                 {{"tag", "power", "power, geometric or exponential"},
                  {"gamma", "1", "growth parameter"},
                  {"d", "2", "decay exponent"},
                  {"n-max", "100", "largest n"},
                  {"every", "1", "emit every k-th row"}},
                 {"dimension-lab::local_dimension_profile"},
                 cmd_profile});
    r.push_back({"dimension-estimate",
                 "Finite-depth dimension estimate from window counts",
                 concat({{"set", "B", "window family: A, B or F"}},
                        concat(kWindowParams, {{"depths", "10,20,40", "depths"},
                                               {"method", "midpoint", "midpoint or sampled"},
                                               {"samples", "32", "words for the sampled method"}})),
                 {"dimension-lab::finite_depth_dimension"},
                 cmd_dimension_estimate});
    r.push_back({"figure1",
                 "Dimension of E_phi against gamma for each growth family",
                 {{"gamma-grid", "0.1:2.0:0.1", "a:b:step or a comma list"}},
                 {"dimension-lab::figure1_data"},
                 cmd_figure1});
    r.push_back({"ifs",
                 "d-decaying Gauss-like systems",
                 {{"action", "", "build, project, expand or predict", true, true},
                  {"model", "affine", "affine or gauss"},
                  {"d", "3", "decay exponent of the affine model"},
                  {"check-limit", "1000", "branches checked by build"},
                  {"word", "", "digit word for project, or a point for expand"},
                  {"x", "", "point for expand: p/q, decimal, sqrt:<n>, e or pi"},
                  {"depth", "10", "digits for expand"},
                  {"tail", "auto", "point f_w is applied to (auto: 1, or 1/2 for expand)"},
                  {"phi", "", "growth function for predict"},
                  {"profile-n", "1000", "profile length for predict"}},
                 {"ifs::build_affine", "ifs::gauss_as_ddecaying", "ifs::project", "ifs::symbolic_expand",
                  "ifs::predicted_dimension"},
                 cmd_ifs});
    return r;
}

} // namespace

const std::vector<CommandSpec>& registry()
{
    static const std::vector<CommandSpec> r = make_registry();
    return r;
}

const CommandSpec* find_command(const std::string& name)
{
    for (const auto& c : registry())
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace cfdim::cli
