#include "cfdim/numerics/random.hpp"

#include "cfdim/errors.hpp"

#include <vector>

namespace cfdim {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

BigInt random_bits(Engine& engine, std::size_t bits)
{
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    for (auto& w : buf) w = engine();
    if (const std::size_t extra = words * 64 - bits; extra != 0 && words > 0) buf.back() >>= extra;
    BigInt r;
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    return r;
}

BigInt uniform_integer(Engine& engine, const BigInt& lo, const BigInt& hi)
{
    if (hi < lo) throw DomainError("uniform_integer on an empty range");
    const BigInt span = hi - lo + 1;
    if (span == 1) return lo;
    const std::size_t bits = mpz_sizeinbase(BigInt(span - 1).get_mpz_t(), 2);
    for (;;) {
        BigInt r = random_bits(engine, bits);
        if (r < span) return lo + r;
    }
}

} // namespace cfdim
