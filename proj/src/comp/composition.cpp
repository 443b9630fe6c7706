#include "cfdim/comp/composition.hpp"

#include "cfdim/errors.hpp"
#include "cfdim/numerics/certified.hpp"
#include "cfdim/numerics/zeta.hpp"

#include <thread>

namespace cfdim {

namespace {

void require_positive_query(const CompositionSumQuery& q)
{
    if (q.m < 1 || q.n < 1) throw DomainError("composition sum needs m >= 1 and n >= 1");
    if (q.t.sign() <= 0) throw DomainError("composition sum needs t > 0");
}

BigReal zero(long precision)
{
    return BigReal::exact(0, precision);
}

} // namespace

CompositionTable::CompositionTable(long m_max, long n_max, const ExactRational& t, long precision)
    : m_max_(m_max), n_max_(n_max)
{
    if (m_max < 1 || n_max < 1) throw DomainError("composition table needs m_max, n_max >= 1");
    if (t.sign() <= 0) throw DomainError("composition sum needs t > 0");
    const long w = precision + 8;
    const BigReal neg_t = BigReal::exact(-t, w);
    std::vector<BigReal> base(static_cast<std::size_t>(m_max + 1), zero(w));
    for (long j = 1; j <= m_max; ++j) base[static_cast<std::size_t>(j)] = pow(BigReal::exact(j, w), neg_t);
    g_.push_back(base);
    for (long k = 2; k <= n_max; ++k) {
        const auto& prev = g_.back();
        std::vector<BigReal> cur(static_cast<std::size_t>(m_max + 1), zero(w));
        for (long j = k; j <= m_max; ++j) {
            BigReal acc = zero(w);
            // last part i, the first k-1 parts sum to j - i >= k - 1
            for (long i = 1; i <= j - k + 1; ++i)
                acc = acc + base[static_cast<std::size_t>(i)] * prev[static_cast<std::size_t>(j - i)];
            cur[static_cast<std::size_t>(j)] = acc;
        }
        g_.push_back(std::move(cur));
    }
}

const BigReal& CompositionTable::at(long m, long n) const
{
    if (m < 1 || m > m_max_ || n < 1 || n > n_max_) throw DomainError("composition table index out of range");
    return g_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(m)];
}

BigReal composition_sum(const CompositionSumQuery& q, long precision)
{
    require_positive_query(q);
    if (q.n > q.m) return zero(precision);
    return CompositionTable(q.m, q.n, q.t, precision).at(q.m, q.n);
}

BigReal generalized_bound_constant(const ExactRational& t, long precision)
{
    if (t <= ExactRational(1)) throw DomainError("bound constant needs t > 1 (zeta pole at 1)");
    const long w = precision + 8;
    return BigReal::exact(ExactRational(9, 2), w) * (BigReal::exact(2, w) + zeta(t, w));
}

BigReal lemma_bound(const CompositionSumQuery& q, long precision)
{
    require_positive_query(q);
    const long w = precision + 8 + 2 * static_cast<long>(mpz_sizeinbase(BigInt(q.n).get_mpz_t(), 2));
    const BigReal c = generalized_bound_constant(q.t, w);
    return pow(c, q.n) * pow(BigReal::exact(q.m, w), BigReal::exact(-q.t, w));
}

namespace {

// One s value of the grid; escalates precision until every point decides.
void verify_one_s(const LemmaGrid& grid, const ExactRational& s, long precision, bool keep, LemmaReport& out)
{
    const ExactRational t = grid.exponent_scale * s;
    const PrecisionSchedule schedule{precision, std::max(precision, 8192L)};
    for (long p : schedule.steps()) {
        const CompositionTable table(grid.m_max, grid.n_max, t, p);
        const BigReal c = generalized_bound_constant(t, p + 16);
        LemmaReport local;
        bool undecided = false;
        for (long n = 1; n <= grid.n_max && !undecided; ++n) {
            const BigReal cn = pow(c, n);
            for (long m = n; m <= grid.m_max; ++m) {
                LemmaPoint pt{m, n, s, table.at(m, n),
                              cn * pow(BigReal::exact(m, p + 16), BigReal::exact(-t, p + 16)), 0.0};
                pt.ratio = pt.lhs.center_double() / pt.rhs.center_double();
                const Cmp cmp = compare(pt.lhs, pt.rhs);
                const bool below = mpfr_lessequal_p(pt.lhs.upper().get(), pt.rhs.lower().get());
                if (!below && cmp != Cmp::greater) {
                    undecided = true;
                    break;
                }
                ++local.checked;
                if (pt.ratio > local.max_ratio) {
                    local.max_ratio = pt.ratio;
                    local.max_ratio_m = m;
                    local.max_ratio_n = n;
                    local.max_ratio_s = s;
                }
                if (cmp == Cmp::greater) local.violations.push_back(pt);
                if (keep) local.points.push_back(std::move(pt));
            }
        }
        if (!undecided) {
            out = std::move(local);
            return;
        }
    }
    throw PrecisionExhausted("lemma comparison undecided at s = " + s.to_string());
}

} // namespace

LemmaReport verify_lemma(const LemmaGrid& grid, long precision, bool keep_points)
{
    if (grid.m_max < 1 || grid.n_max < 1) throw DomainError("lemma grid needs m_max, n_max >= 1");
    if (grid.s_values.empty()) throw DomainError("lemma grid needs at least one s");
    if (grid.exponent_scale <= ExactRational(1)) throw DomainError("exponent scale must exceed 1");
    for (const auto& s : grid.s_values)
        if (grid.exponent_scale * s <= ExactRational(1) || s >= ExactRational(1))
            throw DomainError("lemma grid needs 1/" + grid.exponent_scale.to_string() + " < s < 1; got s = " +
                              s.to_string());

    std::vector<LemmaReport> per_s(grid.s_values.size());
    std::vector<std::exception_ptr> errors(grid.s_values.size());
    {
        std::vector<std::jthread> pool;
        const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
        for (unsigned t = 0; t < std::min<std::size_t>(hw, grid.s_values.size()); ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < grid.s_values.size(); i += hw) {
                    try {
                        verify_one_s(grid, grid.s_values[i], precision, keep_points, per_s[i]);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    LemmaReport report;
    for (auto& r : per_s) {
        report.checked += r.checked;
        if (r.max_ratio > report.max_ratio) {
            report.max_ratio = r.max_ratio;
            report.max_ratio_m = r.max_ratio_m;
            report.max_ratio_n = r.max_ratio_n;
            report.max_ratio_s = r.max_ratio_s;
        }
        for (auto& v : r.violations) report.violations.push_back(std::move(v));
        for (auto& p : r.points) report.points.push_back(std::move(p));
    }
    return report;
}

} // namespace cfdim
