#pragma once

#include "cfdim/construct/window.hpp"
#include "cfdim/numerics/big_real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfdim {

// Logarithmic digit growth L(j) of the measure's windows.
enum class GrowthTag {
    Power,        // j^gamma
    Geometric,    // gamma^j
    Exponential,  // e^{gamma j}
};
std::string to_string(GrowthTag t);
GrowthTag parse_growth_tag(const std::string& text);  // power | geometric | exponential

struct ProfileQuery {
    GrowthTag tag = GrowthTag::Power;
    ExactRational gamma{1};
    ExactRational d{2};  // decay exponent; 2 for continued fractions
    long n_max = 100;
};

struct ProfileRow {
    long n = 0;
    std::optional<ExactRational> exact;  // when every L(j) is rational
    BigReal value;
};

// rho(n) = sum_{j<n} L(j) / (d sum_{j<=n} L(j) - (d-1) L(n)), n = 1..n_max.
std::vector<ProfileRow> local_dimension_profile(const ProfileQuery& q, long precision = kDefaultPrecision);

// Limit of the profile: 1/d for power growth, 1/(r + d - 1) for geometric
// growth with ratio r (r = gamma, or e^gamma for the exponential tag).
BigReal profile_limit(const ProfileQuery& q, long precision = kDefaultPrecision);

struct FiniteDepthEstimate {
    long depth = 0;
    double log_count = 0;   // sum of log |window_j|
    double log_length = 0;  // -log |I_n| of the typical cylinder
    double estimate = 0;    // log_count / log_length
};

struct FiniteDepthMethod {
    enum class Kind { midpoint, sampled };
    Kind kind = Kind::midpoint;
    long samples = 32;  // sampled: geometric mean over random admissible words
    std::uint64_t seed = 0;
};

// log(number of admissible depth-n cylinders) / -log(typical cylinder length).
// EmptyWindow if some window up to depth is empty.
FiniteDepthEstimate finite_depth_dimension(const WindowSpec& spec, long depth, const FiniteDepthMethod& method = {});

struct Figure1Row {
    ExactRational gamma;
    std::string family;  // exp-power | poly | exp-geom
    ExactRational dim;
    std::string note;
};

// Known dimensions: exp(n^g) gives 1 below g = 1/2 and 1/2 from there on;
// n^g with g > 1 gives 1; exp(g^n) with g > 1 gives 1/(g + 1). Families are
// emitted only where those formulas apply.
std::vector<Figure1Row> figure1_data(const std::vector<ExactRational>& gammas);

// "a:b:step" with exact decimal arithmetic, endpoints inclusive.
std::vector<ExactRational> parse_grid(const std::string& text);

} // namespace cfdim
