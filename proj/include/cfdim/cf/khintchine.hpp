#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cfdim {

struct KhintchineSummary {
    std::size_t samples = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    double lower_quartile = 0;
    double median = 0;
    double upper_quartile = 0;
    double min = 0;
    double max = 0;
};

// Distribution of S_n(x) / (n ln n) for x uniform in (0,1). Each sample is a
// dyadic rational with 64*ceil(4n/64) random bits drawn from its own derived
// seed, so the result does not depend on the thread count.
// DomainError for samples < 100 or depth < 100 (use the ratios call for
// smaller experiments); PrecisionExhausted if a sample's expansion ends
// before depth digits.
KhintchineSummary khintchine_mc(std::size_t samples, std::size_t depth, std::uint64_t seed,
                                unsigned threads = 0);

// The individual ratios, in sample order.
std::vector<double> khintchine_ratios(std::size_t samples, std::size_t depth, std::uint64_t seed,
                                      unsigned threads = 0);

// Linear-interpolated quantile of sorted data (R type 7).
double quantile_sorted(const std::vector<double>& sorted, double prob);

} // namespace cfdim
