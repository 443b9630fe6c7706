#pragma once

#include "cfdim/cf/digit_word.hpp"
#include "cfdim/construct/window.hpp"
#include "cfdim/numerics/growth.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cfdim {

enum class Provenance { SetA, SetB, SetEM, SetF, MeasureMu };
std::string to_string(Provenance p);

// Produces a_n for n = 1, 2, ... in order.
class DigitGenerator {
public:
    virtual ~DigitGenerator() = default;
    virtual BigInt digit(long n) = 0;
    virtual std::unique_ptr<DigitGenerator> clone() const = 0;
};

// Stateful single-consumer stream; copies are independent clones.
class DigitStream {
public:
    DigitStream(std::unique_ptr<DigitGenerator> gen, Provenance provenance, nlohmann::json parameters);
    DigitStream(const DigitStream& other);
    DigitStream& operator=(const DigitStream& other);
    DigitStream(DigitStream&&) noexcept = default;
    DigitStream& operator=(DigitStream&&) noexcept = default;

    BigInt next();
    DigitWord take(std::size_t count);
    long index() const { return index_; }  // digits produced so far
    Provenance provenance() const { return provenance_; }
    const nlohmann::json& parameters() const { return parameters_; }

private:
    std::unique_ptr<DigitGenerator> gen_;
    Provenance provenance_;
    nlohmann::json parameters_;
    long index_ = 0;
};

// Digit choice inside a window. Random draws at index n use derive_seed(seed, n),
// so a stream is reproducible and position independent.
struct DigitPolicy {
    enum class Kind { min, mid, random };
    Kind kind = Kind::min;
    std::uint64_t seed = 0;
};
DigitPolicy parse_policy(const std::string& text);  // min | mid | random:<seed>
std::string to_string(const DigitPolicy& p);

// Digits before spec.start are 1. EmptyWindow at the first bad index.
DigitStream stream_B(const WindowSpec& spec, const DigitPolicy& policy);
// Constant bounds only.
DigitStream stream_A(const WindowSpec& spec, const DigitPolicy& policy);
DigitStream stream_F(const ExactRational& gamma, const ExactRational& alpha, const DigitPolicy& policy);
// Uniform measure on A(gamma, c1, c2, N): each digit n >= N uniform in its window.
DigitStream stream_mu(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2, long start,
                      std::uint64_t seed);
DigitWord sample_mu(const ExactRational& gamma, const ExactRational& c1, const ExactRational& c2, long start,
                    long depth, std::uint64_t seed);

enum class FillerPolicy { cycle, random };

struct EMSpec {
    GrowthFunction phi = ExpPower{ExactRational(2, 5)};
    PsiFunction psi = PsiInvLog{};  // eps_k = psi(k)
    long M = 2;
    FillerPolicy filler = FillerPolicy::cycle;
    std::uint64_t seed = 0;
};

void validate(const EMSpec& spec);

struct EMIndex {
    long k = 0;
    long n = 0;             // n_k
    BigInt floor_value;     // floor((1 + eps_k) phi(n_k))
    BigInt digit;           // a_{n_k}
};

struct EMIndexMap {
    std::vector<EMIndex> entries;  // all n_k <= n_max
    long n_max = 0;
    // max{k : n_k <= n}, 0 when n < n_1
    long r(long n) const;
};

EMIndexMap em_index_map(const EMSpec& spec, long n_max);
DigitStream stream_EM(const EMSpec& spec);

struct LipschitzRow {
    long n = 0;
    long r = 0;
    double r_over_n = 0;
    double log_product_over_n = 0;  // log(a_{n_1} ... a_{n_r(n)}) / n
};

// Sampled conditions r(n)/n -> 0 and log(prod of large digits)/n -> 0.
std::vector<LipschitzRow> em_lipschitz_diagnostics(const EMSpec& spec, const std::vector<long>& depths);

struct MembershipRow {
    long n = 0;
    BigInt S;  // digit sum
    BigInt T;  // largest digit
    BigReal S_over_phi;
    std::optional<BigReal> T_over_exp;  // T_n / e^{n^gamma}
};

// Ratios at each depth (strictly increasing) of a fresh stream.
std::vector<MembershipRow> membership_diagnostics(DigitStream stream, const GrowthFunction& phi,
                                                  const std::optional<ExactRational>& gamma_T,
                                                  const std::vector<long>& depths,
                                                  long precision = kDefaultPrecision);

nlohmann::json to_json(const WindowSpec& spec);
WindowSpec window_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EMSpec& spec);
EMSpec em_spec_from_json(const nlohmann::json& j);

} // namespace cfdim
