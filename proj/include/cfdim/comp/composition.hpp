#pragma once

#include "cfdim/numerics/big_real.hpp"

#include <vector>

namespace cfdim {

// Sum over compositions (i_1..i_n) of m, i.e. positive parts summing to m,
// of prod i_k^(-t). In the lemma t = 2s; in the d-decaying generalisation
// t = d*s.
struct CompositionSumQuery {
    long m = 1;
    long n = 1;
    ExactRational t{2};
};

// All sums g_n(m) for m <= m_max, n <= n_max at one exponent, by repeated
// discrete convolution of g_1(j) = j^-t. O(n_max * m_max^2).
class CompositionTable {
public:
    CompositionTable(long m_max, long n_max, const ExactRational& t, long precision = kDefaultPrecision);

    // Exact zero when n > m (empty set of compositions).
    const BigReal& at(long m, long n) const;
    long m_max() const { return m_max_; }
    long n_max() const { return n_max_; }

private:
    long m_max_;
    long n_max_;
    std::vector<std::vector<BigReal>> g_;  // g_[n-1][m]
};

// DomainError on non-positive m, n or t.
BigReal composition_sum(const CompositionSumQuery& q, long precision = kDefaultPrecision);

// ((9/2)(2 + zeta(t)))^n * m^-t; DomainError unless t > 1.
BigReal lemma_bound(const CompositionSumQuery& q, long precision = kDefaultPrecision);

// (9/2)(2 + zeta(t)); DomainError unless t > 1 (for t = d*s: s <= 1/d).
BigReal generalized_bound_constant(const ExactRational& t, long precision = kDefaultPrecision);

struct LemmaGrid {
    long m_max = 60;
    long n_max = 12;
    std::vector<ExactRational> s_values;
    // exponent t = exponent_scale * s; 2 for continued fractions, d in general
    ExactRational exponent_scale{2};
};

struct LemmaPoint {
    long m = 0;
    long n = 0;
    ExactRational s;
    BigReal lhs;
    BigReal rhs;
    double ratio = 0;  // lhs / rhs at the enclosure centers
};

struct LemmaReport {
    std::vector<LemmaPoint> violations;  // lhs certainly above rhs
    double max_ratio = 0;
    long max_ratio_m = 0;
    long max_ratio_n = 0;
    ExactRational max_ratio_s;
    std::size_t checked = 0;
    std::vector<LemmaPoint> points;  // filled only when requested
};

// Checks lhs <= rhs on every (m, n, s) with n <= m <= m_max, n <= n_max.
// Comparisons whose enclosures overlap are redone at doubled precision;
// PrecisionExhausted past 8192 bits. Needs 1/exponent_scale < s < 1.
LemmaReport verify_lemma(const LemmaGrid& grid, long precision = kDefaultPrecision, bool keep_points = false);

} // namespace cfdim
