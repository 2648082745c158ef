#ifndef CONCORD_EXPECTATION_HPP
#define CONCORD_EXPECTATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace concord {

enum class ExpectationMode { closed_form, enumeration, monte_carlo };

std::string to_string(ExpectationMode mode);
ExpectationMode expectation_mode_from_string(const std::string& name);

/// How the expected NDC under the permutation null is computed.
struct ExpectationConfig {
    ExpectationMode mode = ExpectationMode::closed_form;
    std::size_t h = 1000;               // permutation samples (monte_carlo)
    std::uint64_t seed = 0;             // monte_carlo stream seed
    std::size_t enumeration_limit = 8;  // max m for exhaustive mode, <= 10

    void validate() const;
};

/// Mean NDC over all m! permutations of one vector against the other.
/// Exhaustive; m is capped by enumeration_limit.
double expected_ndc_enumeration(std::span<const double> p, std::span<const double> q,
                                std::size_t enumeration_limit = 8);

/// Exact permutation expectation. Under a uniform permutation every position
/// of p meets a uniformly chosen entry of q, so
///   E[NDC] = 1 - (1/m^2) * sum_i sum_j |p_i - q_j|,
/// evaluated in O(m log m) with a sort and prefix sums.
double expected_ndc_closed_form(std::span<const double> p, std::span<const double> q);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Mean NDC over h seeded random permutations of q. Permutation j draws from
/// the sub-stream derive_seed(seed, j), so the estimate does not depend on
/// the thread schedule.
MonteCarloEstimate expected_ndc_monte_carlo(std::span<const double> p,
                                            std::span<const double> q, std::size_t h,
                                            std::uint64_t seed);

}  // namespace concord

#endif
