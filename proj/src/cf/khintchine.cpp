#include "cfdim/cf/khintchine.hpp"

#include "cfdim/cf/expansion.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/numerics/random.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace cfdim {

namespace {

double sample_ratio(std::size_t depth, std::uint64_t seed, std::size_t index)
{
    Engine engine(derive_seed(seed, index));
    const std::size_t bits = 64 * ((4 * depth + 63) / 64);
    BigInt num;
    do {
        num = random_bits(engine, bits);
    } while (num == 0);
    BigInt den = 1;
    den <<= bits;
    bool ended = false;
    const auto digits = partial_quotients(num, den, depth, &ended);
    if (digits.size() < depth)
        throw PrecisionExhausted("sample " + std::to_string(index) + " expansion ended after " +
                                 std::to_string(digits.size()) + " digits; raise the sample precision");
    BigInt sum = 0;
    for (const auto& a : digits) sum += a;
    const double n = static_cast<double>(depth);
    return sum.get_d() / (n * std::log(n));
}

} // namespace

std::vector<double> khintchine_ratios(std::size_t samples, std::size_t depth, std::uint64_t seed, unsigned threads)
{
    if (depth < 2) throw DomainError("khintchine depth must be >= 2");
    std::vector<double> ratios(samples);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(samples, 1)));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](unsigned id) {
        try {
            for (std::size_t i = id; i < samples; i += threads) ratios[i] = sample_ratio(depth, seed, i);
        } catch (...) {
            std::scoped_lock lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }
    if (failure) std::rethrow_exception(failure);
    return ratios;
}

double quantile_sorted(const std::vector<double>& sorted, double prob)
{
    if (sorted.empty()) throw DomainError("quantile of empty data");
    const double h = (static_cast<double>(sorted.size()) - 1) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

KhintchineSummary khintchine_mc(std::size_t samples, std::size_t depth, std::uint64_t seed, unsigned threads)
{
    if (samples < 100) throw DomainError("khintchine_mc needs samples >= 100");
    if (depth < 100) throw DomainError("khintchine_mc needs depth >= 100");
    auto r = khintchine_ratios(samples, depth, seed, threads);
    std::sort(r.begin(), r.end());
    KhintchineSummary s;
    s.samples = samples;
    s.depth = depth;
    s.seed = seed;
    s.lower_quartile = quantile_sorted(r, 0.25);
    s.median = quantile_sorted(r, 0.5);
    s.upper_quartile = quantile_sorted(r, 0.75);
    s.min = r.front();
    s.max = r.back();
    return s;
}

} // namespace cfdim
