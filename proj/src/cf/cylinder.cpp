#include "cfdim/cf/cylinder.hpp"

namespace cfdim {

std::vector<Convergent> convergents(const DigitWord& word)
{
    std::vector<Convergent> out;
    out.reserve(word.size());
    BigInt p_prev = 1, p = 0, q_prev = 0, q = 1;
    for (const auto& a : word) {
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev.swap(p);
        q_prev.swap(q);
        p.swap(p_next);
        q.swap(q_next);
        out.push_back({p, q});
    }
    return out;
}

Cylinder cylinder(const DigitWord& word)
{
    const auto conv = convergents(word);
    const Convergent last = conv.back();
    const Convergent prev = conv.size() >= 2 ? conv[conv.size() - 2] : Convergent{BigInt(0), BigInt(1)};
    ExactRational a(last.p, last.q);
    ExactRational b(BigInt(last.p + prev.p), BigInt(last.q + prev.q));
    if (b < a) std::swap(a, b);
    return {word, a, b, last, prev};
}

ExactRational cylinder_length_lower_bound(const DigitWord& word)
{
    BigInt den = 1;
    for (const auto& a : word) den *= (a + 1) * (a + 1);
    return {BigInt(1), den};
}

ExactRational cylinder_length_upper_bound(const DigitWord& word)
{
    BigInt den = 1;
    for (const auto& a : word) den *= a * a;
    return {BigInt(1), den};
}

} // namespace cfdim
