#pragma once

#include "cfdim/cf/digit_word.hpp"
#include "cfdim/dimlab/profile.hpp"
#include "cfdim/numerics/certified.hpp"
#include "cfdim/numerics/growth.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cfdim {

struct ConditionCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    bool all_pass() const;
};

// Infinite IFS {f_i} on [0,1] whose branch derivatives decay like i^-d.
// Branches are ordered like the Gauss map: larger digits map further left.
class DDecayingSystem {
public:
    virtual ~DDecayingSystem() = default;

    virtual std::string name() const = 0;
    virtual ExactRational d() const = 0;
    // xi_i <= |f_i'| <= lambda_i on [0,1]
    virtual BigReal xi(const BigInt& i, long precision) const = 0;
    virtual BigReal lambda(const BigInt& i, long precision) const = 0;
    virtual BigReal apply(const BigInt& i, const BigReal& x, long precision) const = 0;
    // left and right end of f_i([0,1])
    virtual std::pair<BigReal, BigReal> image(const BigInt& i, long precision) const = 0;
    // branch inverse on the image of f_i
    virtual BigReal invert(const BigInt& i, const BigReal& y, long precision) const = 0;
    // the i with y strictly inside the image of f_i; AmbiguousBoundary when
    // the enclosure touches an image endpoint
    virtual BigInt locate(const BigReal& y, long precision) const = 0;

    // condition (1): m-fold compositions have derivative at most A
    virtual long contraction_step() const = 0;
    virtual BigReal contraction_bound(long precision) const = 0;
    // constants of condition (3) at decay slack eps
    virtual std::pair<ExactRational, ExactRational> decay_constants(const ExactRational& eps) const = 0;

    virtual nlohmann::json to_json() const = 0;
};

// f_i(x) = T_{i+1} + w_i (1 - x) with w_i = i^-d / zeta(d), T_i = sum_{j>=i} w_j.
class AffineGaussLike final : public DDecayingSystem {
public:
    explicit AffineGaussLike(const ExactRational& d);

    std::string name() const override { return "affine"; }
    ExactRational d() const override { return d_; }
    BigReal weight(const BigInt& i, long precision) const;
    BigReal tail(const BigInt& i, long precision) const;  // T_i

    BigReal xi(const BigInt& i, long precision) const override { return weight(i, precision); }
    BigReal lambda(const BigInt& i, long precision) const override { return weight(i, precision); }
    BigReal apply(const BigInt& i, const BigReal& x, long precision) const override;
    std::pair<BigReal, BigReal> image(const BigInt& i, long precision) const override;
    BigReal invert(const BigInt& i, const BigReal& y, long precision) const override;
    BigInt locate(const BigReal& y, long precision) const override;
    long contraction_step() const override { return 1; }
    BigReal contraction_bound(long precision) const override { return weight(BigInt(1), precision); }
    // C1 = 1/(2 (1 + 1/(d-1))) <= 1/(2 zeta(d)), C2 = 2; valid for every eps >= 0
    std::pair<ExactRational, ExactRational> decay_constants(const ExactRational& eps) const override;
    nlohmann::json to_json() const override;

    const ConditionReport& report() const { return report_; }

private:
    friend std::shared_ptr<AffineGaussLike> build_affine(const ExactRational& d, long precision, long check_limit);

    BigReal zeta_d(long precision) const;

    ExactRational d_;
    ConditionReport report_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<long, BigInt>, BigReal> tails_;
    mutable std::map<long, BigReal> zeta_;
};

// The continued-fraction system f_i(x) = 1/(i + x).
class GaussSystem final : public DDecayingSystem {
public:
    std::string name() const override { return "gauss"; }
    ExactRational d() const override { return ExactRational(2); }
    BigReal xi(const BigInt& i, long precision) const override;      // (i+1)^-2
    BigReal lambda(const BigInt& i, long precision) const override;  // i^-2
    BigReal apply(const BigInt& i, const BigReal& x, long precision) const override;
    std::pair<BigReal, BigReal> image(const BigInt& i, long precision) const override;
    BigReal invert(const BigInt& i, const BigReal& y, long precision) const override;
    BigInt locate(const BigReal& y, long precision) const override;
    long contraction_step() const override { return 2; }
    BigReal contraction_bound(long precision) const override;  // 1/4
    std::pair<ExactRational, ExactRational> decay_constants(const ExactRational& eps) const override;
    nlohmann::json to_json() const override;
};

// Builds the affine model and verifies conditions (1)-(3), the tiling and the
// decay trends on i <= check_limit. DomainError for d <= 1.
std::shared_ptr<AffineGaussLike> build_affine(const ExactRational& d, long precision = kDefaultPrecision,
                                              long check_limit = 1000);

std::shared_ptr<GaussSystem> gauss_as_ddecaying();

// Conditions (1)-(3) and the branch order on i <= limit, with the pair
// contraction sup for m = 2 sampled on a grid.
ConditionReport check_conditions(const DDecayingSystem& system, long limit, long precision = kDefaultPrecision);

// sup of |(f_a o f_b)'| over a, b <= limit and a grid of x, numerically.
double pair_contraction_sup(const DDecayingSystem& system, long limit = 30, int grid = 64);

// f_{a_1} o ... o f_{a_n}(tail); the limit point definition uses tail = 1.
BigReal project(const DDecayingSystem& system, const DigitWord& word, long precision = kDefaultPrecision,
                const ExactRational& tail = ExactRational(1));

// Hull of f_w(0) and f_w(1): the cylinder of w.
BigReal cylinder_image(const DDecayingSystem& system, const DigitWord& word, long precision = kDefaultPrecision);

// First n symbolic digits; AmbiguousBoundary if a branch endpoint is hit.
DigitWord symbolic_expand(const DDecayingSystem& system, const BigReal& x, std::size_t n);
// Re-evaluates at increasing precision before giving up.
DigitWord symbolic_expand(const DDecayingSystem& system, const RealProducer& x, std::size_t n,
                          const PrecisionSchedule& schedule = {});

struct DimensionPrediction {
    ExactRational value;
    std::string regime;
    std::optional<ProfileQuery> query;  // empty where the profile does not apply
    std::vector<ProfileRow> profile;
};

// Known dimensions for d-decaying Gauss-like systems: exp(n^g) gives 1 for
// g < 1/d and 1/d for g > 1/d; exp(g^n) gives 1/(g + d - 1). Unsupported
// otherwise (g = 1/d is covered only for d = 2).
DimensionPrediction predicted_dimension(const ExactRational& d, const GrowthFunction& phi, long profile_n = 1000);

std::shared_ptr<DDecayingSystem> system_from_json(const nlohmann::json& j);

} // namespace cfdim
