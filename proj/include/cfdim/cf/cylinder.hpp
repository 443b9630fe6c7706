#pragma once

#include "cfdim/cf/digit_word.hpp"

#include <vector>

namespace cfdim {

struct Convergent {
    BigInt p;
    BigInt q;
    ExactRational value() const { return {p, q}; }
};

// p_k/q_k for k = 1..n from p_{-1}=1, p_0=0, q_{-1}=0, q_0=1.
std::vector<Convergent> convergents(const DigitWord& word);

// Rank-n basic interval: all x in (0,1) whose first n partial quotients are
// the word. Endpoints are p_n/q_n and (p_n+p_{n-1})/(q_n+q_{n-1}), ordered;
// which one is on the left depends on the parity of n. Endpoints are treated
// as open; they form a countable, measure-zero set.
struct Cylinder {
    DigitWord word;
    ExactRational left;
    ExactRational right;
    Convergent convergent;
    Convergent previous;

    ExactRational length() const { return right - left; }
    ExactRational midpoint() const { return (left + right) / ExactRational(2); }
    bool contains(const ExactRational& x) const { return left < x && x < right; }
};

Cylinder cylinder(const DigitWord& word);

// prod (a_k + 1)^-2 and prod a_k^-2, the classical length bounds.
ExactRational cylinder_length_lower_bound(const DigitWord& word);
ExactRational cylinder_length_upper_bound(const DigitWord& word);

} // namespace cfdim
