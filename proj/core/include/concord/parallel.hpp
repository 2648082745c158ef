#ifndef CONCORD_PARALLEL_HPP
#define CONCORD_PARALLEL_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace concord {

/// Worker count: CONCORD_THREADS if set (clamped to >= 1), else the hardware
/// concurrency.
unsigned thread_count();

/// Runs fn(i) for i in [0, n). Work items must be independent and write only
/// to their own slots; the schedule is then irrelevant to the result.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Pairwise (tree) summation. Fixed association order, so the result is
/// identical no matter how the caller produced the values, and the rounding
/// error stays O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values);

/// Neumaier-compensated accumulator for long serial reductions.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace concord

#endif
