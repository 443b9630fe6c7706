#pragma once

#include "cfdim/cf/digit_word.hpp"

#include <vector>

namespace cfdim {

// Running sums S_n = a_1 + ... + a_n and running maxima T_n = max_{k<=n} a_k.
struct QuotientStats {
    DigitWord word;
    std::vector<BigInt> sums;
    std::vector<BigInt> maxima;
};

QuotientStats stats(const DigitWord& word);

} // namespace cfdim
