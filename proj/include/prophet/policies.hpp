#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "prophet/distributions.hpp"
#include "prophet/instance.hpp"

namespace prophet {

/// Piecewise-constant randomized threshold over time: piece r covers
/// [breakpoints[r], breakpoints[r+1]) and the last piece also contains 1.
class ThresholdSchedule {
public:
    ThresholdSchedule(std::vector<double> breakpoints, std::vector<RandomizedThreshold> thresholds);

    static ThresholdSchedule constant(RandomizedThreshold th);

    std::size_t pieces() const noexcept { return thresholds_.size(); }
    double start(std::size_t r) const noexcept { return breakpoints_[r]; }
    double end(std::size_t r) const noexcept { return breakpoints_[r + 1]; }
    double length(std::size_t r) const noexcept { return breakpoints_[r + 1] - breakpoints_[r]; }
    const RandomizedThreshold& threshold(std::size_t r) const noexcept { return thresholds_[r]; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<RandomizedThreshold>& thresholds() const noexcept { return thresholds_; }

    std::size_t piece_at(double t) const noexcept;
    const RandomizedThreshold& threshold_at(double t) const noexcept { return thresholds_[piece_at(t)]; }

    /// True when the augmented cut points never increase over time.
    bool nonincreasing() const noexcept;

    /// Decreasing rearrangement: the same pieces (with their lengths)
    /// reordered by threshold, largest first.
    ThresholdSchedule sorted_nonincreasing() const;

    ThresholdSchedule with_threshold(std::size_t r, RandomizedThreshold th) const;

    friend bool operator==(const ThresholdSchedule&, const ThresholdSchedule&) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<RandomizedThreshold> thresholds_;
};

/// Partition of the value axis by cut points c_1 < ... < c_m into 2m + 1
/// buckets: below c_1, equal to c_1, strictly between c_1 and c_2, ...,
/// equal to c_m, above c_m.
class ValueBuckets {
public:
    ValueBuckets() = default;
    explicit ValueBuckets(std::vector<double> cuts);

    std::size_t count() const noexcept { return 2 * cuts_.size() + 1; }
    std::size_t bucket_of(double v) const noexcept;
    const std::vector<double>& cuts() const noexcept { return cuts_; }

    /// Pr[V in bucket b] and E[V * 1{V in bucket b}] under d.
    double mass(const Distribution& d, std::size_t b) const noexcept;
    double moment(const Distribution& d, std::size_t b) const noexcept;
    /// Pr[V in bucket b and V > x].
    double mass_above(const Distribution& d, std::size_t b, double x) const noexcept;

    friend bool operator==(const ValueBuckets&, const ValueBuckets&) = default;

private:
    std::vector<double> cuts_;
};

/// Activation probabilities g(i, j, bucket, time piece); the first activated
/// reward is selected. The tiebreak coordinate of each arrival serves as its
/// activation coin, so an activation policy and a threshold schedule read the
/// same randomness from a sequence.
class ActivationPolicy {
public:
    ActivationPolicy(std::vector<double> breakpoints, std::vector<ValueBuckets> buckets, int copies);

    /// Default buckets for d: one cut per breakpoint.
    static ValueBuckets default_buckets(const Distribution& d);

    /// g = 1{v exceeds tau(t)} in augmented order, bucketed finely enough to
    /// reproduce the schedule exactly on `inst`.
    static ActivationPolicy from_schedule(const ThresholdSchedule& schedule, const Instance& inst);

    std::size_t pieces() const noexcept { return breakpoints_.size() - 1; }
    std::size_t identities() const noexcept { return buckets_.size(); }
    int copies() const noexcept { return copies_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const ValueBuckets& buckets(std::size_t i) const noexcept { return buckets_[i]; }

    std::size_t piece_at(double t) const noexcept;

    double prob(std::size_t piece, std::size_t i, std::size_t j, std::size_t bucket) const noexcept {
        return table_[index(piece, i, j, bucket)];
    }
    void set(std::size_t piece, std::size_t i, std::size_t j, std::size_t bucket, double p);
    void set_all_copies(std::size_t piece, std::size_t i, std::size_t bucket, double p);

private:
    std::size_t index(std::size_t piece, std::size_t i, std::size_t j, std::size_t bucket) const noexcept {
        return piece * stride_ + offsets_[i] + j * buckets_[i].count() + bucket;
    }

    std::vector<double> breakpoints_;
    std::vector<ValueBuckets> buckets_;
    int copies_;
    std::vector<std::size_t> offsets_;
    std::size_t stride_ = 0;
    std::vector<double> table_;
};

/// Two-threshold rule with a data-dependent switch time: tau1 (OPT quantile
/// 3/4) before S, tau2 (OPT quantile e^-ell) from S on, where S is the last
/// time at which the tau2 rule started then would fail to stop with
/// probability at most epsilon.
struct AdaptiveTwoThreshold {
    double epsilon = 0.0;
    int ell = 0;
    int copies = 0;
    RandomizedThreshold tau1;
    RandomizedThreshold tau2;
    /// q[i] = Pr[V_i rejected by tau2].
    std::vector<double> q;
    /// w[i] = -ln q[i].
    std::vector<double> w;

    std::size_t identities() const noexcept { return q.size(); }
    double log_inv_epsilon() const noexcept;

    /// -ln of the product of q over a multiset of remaining rewards, given as
    /// per-identity counts. The online rule and the offline oracle both use it.
    double log_inv_q(const std::vector<int>& counts) const noexcept;
};

using Policy = std::variant<ThresholdSchedule, ActivationPolicy, AdaptiveTwoThreshold>;

struct StopOutcome {
    bool stopped = false;
    double stop_time = 1.0;
    double value = 0.0;
    int identity = -1;
    int copy = -1;

    friend bool operator==(const StopOutcome&, const StopOutcome&) = default;
};

enum class Phase { First, Second };

ThresholdSchedule make_single_threshold(const OptLaw& opt);

/// Quantile function of the blind schedule: 1/2 up to 2/k, then 1/(t k).
double blind_quantile(double t, int k) noexcept;

/// Median up to 2/k, then `grid_resolution` equal pieces on (2/k, 1], each
/// using the quantile at its left endpoint.
ThresholdSchedule make_blind_schedule(const OptLaw& opt, int k, int grid_resolution);

/// ell = ceil(sqrt(ln(1/eps))) so that e^{-ell^2} <= eps.
int ell_for_epsilon(double epsilon);

AdaptiveTwoThreshold make_adaptive(const OptLaw& opt, const Instance& inst, double epsilon);

StopOutcome run_policy(const ThresholdSchedule& schedule, const ArrivalSequence& seq);
StopOutcome run_policy(const ActivationPolicy& policy, const ArrivalSequence& seq);
/// `trace`, when given, receives the phase used at each scanned event.
StopOutcome run_policy(const AdaptiveTwoThreshold& policy, const ArrivalSequence& seq,
                       std::vector<Phase>* trace = nullptr);
StopOutcome run_policy(const Policy& policy, const ArrivalSequence& seq);

/// Offline switch time: max{t : q(t) <= epsilon} over the realized times,
/// or 0 when q(0) > epsilon.
double switch_time_S(const AdaptiveTwoThreshold& policy, const ArrivalSequence& seq);

} // namespace prophet
