#include "cfdim/cf/stats.hpp"

namespace cfdim {

QuotientStats stats(const DigitWord& word)
{
    QuotientStats s{word, {}, {}};
    s.sums.reserve(word.size());
    s.maxima.reserve(word.size());
    BigInt sum = 0, max = 0;
    for (const auto& a : word) {
        sum += a;
        if (a > max) max = a;
        s.sums.push_back(sum);
        s.maxima.push_back(max);
    }
    return s;
}

} // namespace cfdim
