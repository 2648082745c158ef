#include "concord/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "concord/parallel.hpp"
#include "concord/rng.hpp"

namespace concord {

std::string to_string(ExpectationMode mode) {
    switch (mode) {
        case ExpectationMode::closed_form: return "closed_form";
        case ExpectationMode::enumeration: return "enumeration";
        case ExpectationMode::monte_carlo: return "monte_carlo";
    }
    throw std::invalid_argument("unknown expectation mode");
}

ExpectationMode expectation_mode_from_string(const std::string& name) {
    if (name == "closed_form" || name == "closed") return ExpectationMode::closed_form;
    if (name == "enumeration" || name == "enum") return ExpectationMode::enumeration;
    if (name == "monte_carlo" || name == "mc") return ExpectationMode::monte_carlo;
    throw std::invalid_argument("unknown expectation mode: " + name);
}

void ExpectationConfig::validate() const {
    if (mode == ExpectationMode::monte_carlo && h == 0)
        throw std::invalid_argument("monte carlo needs at least one permutation");
    if (enumeration_limit > 10)
        throw std::invalid_argument("enumeration limit above 10 is intractable (10! already "
                                    "means 3.6M arrangements)");
}

namespace {

void check_lengths(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("equivalence vectors differ in length: " +
                                    std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    if (p.empty()) throw std::invalid_argument("equivalence vectors are empty");
}

double mean_concordance(std::span<const double> p, std::span<const double> q) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < p.size(); ++i) sum.add(1.0 - std::abs(p[i] - q[i]));
    return sum.value() / static_cast<double>(p.size());
}

}  // namespace

double expected_ndc_enumeration(std::span<const double> p, std::span<const double> q,
                                std::size_t enumeration_limit) {
    check_lengths(p, q);
    const std::size_t m = p.size();
    if (m > enumeration_limit)
        throw std::invalid_argument("enumeration over " + std::to_string(m) +
                                    "! pair arrangements exceeds limit " +
                                    std::to_string(enumeration_limit));

    // permute positions, not values, so repeated values still contribute
    // every one of the m! arrangements
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});

    CompensatedSum total;
    std::uint64_t count = 0;
    do {
        CompensatedSum conc;
        for (std::size_t i = 0; i < m; ++i) conc.add(1.0 - std::abs(p[i] - q[order[i]]));
        total.add(conc.value() / static_cast<double>(m));
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));

    return total.value() / static_cast<double>(count);
}

double expected_ndc_closed_form(std::span<const double> p, std::span<const double> q) {
    check_lengths(p, q);
    const std::size_t m = p.size();

    // E over uniformly random pairings of one vector against the other is
    // 1 - (1/m^2) * sum_i sum_j |p_i - q_j|; the double sum collapses to a
    // sorted scan with prefix sums
    std::vector<double> sorted_q(q.begin(), q.end());
    std::sort(sorted_q.begin(), sorted_q.end());
    std::vector<double> prefix(m + 1, 0.0);
    {
        CompensatedSum run;
        for (std::size_t j = 0; j < m; ++j) {
            run.add(sorted_q[j]);
            prefix[j + 1] = run.value();
        }
    }
    const double q_total = prefix[m];

    CompensatedSum abs_sum;
    for (const double v : p) {
        const auto it = std::upper_bound(sorted_q.begin(), sorted_q.end(), v);
        const auto below = static_cast<std::size_t>(it - sorted_q.begin());
        const double below_sum = prefix[below];
        // values <= v contribute v - q_j, the rest contribute q_j - v
        abs_sum.add(static_cast<double>(below) * v - below_sum);
        abs_sum.add((q_total - below_sum) - static_cast<double>(m - below) * v);
    }

    const double mm = static_cast<double>(m) * static_cast<double>(m);
    return 1.0 - abs_sum.value() / mm;
}

MonteCarloEstimate expected_ndc_monte_carlo(std::span<const double> p, std::span<const double> q,
                                            std::size_t h, std::uint64_t seed) {
    check_lengths(p, q);
    if (h == 0) throw std::invalid_argument("monte carlo needs at least one permutation");

    std::vector<double> draws(h, 0.0);
    const std::vector<double> base_q(q.begin(), q.end());
    parallel_for(h, [&](std::size_t j) {
        Rng rng(derive_seed(seed, j));
        std::vector<double> shuffled = base_q;
        rng.shuffle(shuffled);
        draws[j] = mean_concordance(p, shuffled);
    });

    MonteCarloEstimate est;
    est.estimate = pairwise_sum(draws) / static_cast<double>(h);
    if (h > 1) {
        std::vector<double> sq(h);
        for (std::size_t j = 0; j < h; ++j) {
            const double diff = draws[j] - est.estimate;
            sq[j] = diff * diff;
        }
        const double variance = pairwise_sum(sq) / static_cast<double>(h - 1);
        est.std_error = std::sqrt(variance / static_cast<double>(h));
    } else {
        est.std_error = 0.0;
    }
    return est;
}

}  // namespace concord
