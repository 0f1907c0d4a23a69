#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prophet/distributions.hpp"

namespace prophet {

/// Base laws F_1..F_n observed `copies` times each.
struct Instance {
    std::vector<Distribution> base;
    int copies = 1;

    std::size_t n() const noexcept { return base.size(); }
    std::size_t total() const noexcept { return base.size() * static_cast<std::size_t>(copies); }
    double support_max() const noexcept;
};

Instance make_instance(std::vector<Distribution> base, int copies);

/// Law of the prophet's value: the maximum of one copy of each base reward.
class OptLaw {
public:
    explicit OptLaw(std::vector<Distribution> base);

    const Distribution& dist() const noexcept { return dist_; }
    std::span<const Distribution> base() const noexcept { return base_; }
    double expected_value() const noexcept { return expected_value_; }

    /// Exact Pr[OPT <= x] (product of base CDFs, no interpolation).
    double cdf(double x) const noexcept { return product_cdf(base_, x); }
    /// Pr[OPT is rejected by th] with independent tiebreaks per reward.
    double reject_prob(const RandomizedThreshold& th) const noexcept {
        return product_reject_prob(base_, th);
    }
    /// Randomized threshold rejecting OPT with probability exactly q.
    RandomizedThreshold threshold_at(double q) const;

    /// Leftmost value x with Pr[OPT <= x] >= q.
    double value_quantile(double q) const;

private:
    std::vector<Distribution> base_;
    Distribution dist_;
    double expected_value_ = 0.0;
    // Merged breakpoint grid of the base laws; quantile searches start here.
    std::vector<double> grid_;
};

OptLaw opt_law(const Instance& inst);

/// E[max] by integrating 1 - prod_i F_i on the merged breakpoint grid.
double expected_max(std::span<const Distribution> base);

struct ArrivalEvent {
    double time = 0.0;
    int identity = 0;
    int copy = 0;
    AugmentedValue value;
};

/// One realized draw of the continuous-time model, sorted by (time, identity, copy).
struct ArrivalSequence {
    std::vector<ArrivalEvent> events;
};

ArrivalSequence sample_arrivals(const Instance& inst, Rng& rng);

/// Same draw as sample_arrivals, reusing `out`'s storage.
void sample_arrivals_into(const Instance& inst, Rng& rng, ArrivalSequence& out);

} // namespace prophet
