#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "prophet/errors.hpp"
#include "prophet/rng.hpp"

namespace prophet {

enum class DistributionKind { DiscreteAtoms, PiecewiseLinearCdf };

/// A sampled reward together with its tiebreak coordinate. Comparisons are
/// lexicographic, so two independent draws are almost surely strictly ordered
/// even when the value law has atoms.
struct AugmentedValue {
    double value = 0.0;
    double tiebreak = 0.0;

    friend auto operator<=>(const AugmentedValue&, const AugmentedValue&) = default;
};

class Quantile {
public:
    explicit Quantile(double q);
    double value() const noexcept { return q_; }

private:
    double q_;
};

/// Accepts values strictly above `tau`, and values equal to `tau` with
/// probability `accept_prob` (decided by the tiebreak coordinate). In the
/// augmented order this is the cut point (tau, 1 - accept_prob).
struct RandomizedThreshold {
    double tau = 0.0;
    double accept_prob = 1.0;

    bool accepts(const AugmentedValue& v) const noexcept {
        return v.value > tau || (v.value == tau && v.tiebreak >= 1.0 - accept_prob);
    }

    AugmentedValue cut() const noexcept { return {tau, 1.0 - accept_prob}; }

    friend bool operator==(const RandomizedThreshold&, const RandomizedThreshold&) = default;
};

/// Total order on thresholds by their augmented cut point.
inline std::partial_ordering compare_thresholds(const RandomizedThreshold& a,
                                                const RandomizedThreshold& b) noexcept {
    return a.cut() <=> b.cut();
}

/// One-dimensional reward law on [0, support_max].
///
/// Stored as strictly increasing breakpoints x_0 < ... < x_m with the left
/// limit F(x_j-) and value F(x_j) at each one; between breakpoints the CDF is
/// linear from F(x_j) to F(x_{j+1}-). Discrete laws are the special case with
/// flat segments, so both families share every operation. Products of mixed
/// families may carry jumps at interior breakpoints.
class Distribution {
public:
    /// `atoms` are (value, mass) pairs; masses must sum to 1 within 1e-9 and
    /// are renormalized. Duplicate values are merged.
    static Distribution discrete(std::vector<std::pair<double, double>> atoms);

    /// `points` are (x, F(x)) pairs with strictly increasing x, nondecreasing
    /// F, first F >= 0 (an atom at x_0 when positive) and last F = 1.
    static Distribution piecewise(std::vector<std::pair<double, double>> points);

    static Distribution point_mass(double value) { return discrete({{value, 1.0}}); }

    DistributionKind kind() const noexcept { return kind_; }
    bool is_discrete() const noexcept { return kind_ == DistributionKind::DiscreteAtoms; }

    double support_min() const noexcept { return xs_.front(); }
    double support_max() const noexcept { return xs_.back(); }

    std::span<const double> breakpoints() const noexcept { return xs_; }
    std::span<const double> left_limits() const noexcept { return left_; }
    std::span<const double> right_values() const noexcept { return right_; }

    /// (value, mass) pairs of every breakpoint carrying positive mass.
    std::vector<std::pair<double, double>> atoms() const;

    /// Pr[V <= x].
    double cdf(double x) const noexcept;
    /// Pr[V < x].
    double cdf_left(double x) const noexcept;
    /// Pr[V = x].
    double mass_at(double x) const noexcept;

    /// Pr[the randomized threshold rejects V].
    double reject_prob(const RandomizedThreshold& th) const noexcept;
    /// Pr[the randomized threshold accepts V], computed from the upper tail.
    double accept_prob(const RandomizedThreshold& th) const noexcept;
    /// E[V * 1{accepted}].
    double accepted_mean(const RandomizedThreshold& th) const noexcept;

    /// Pr[lo < V < hi].
    double mass_open(double lo, double hi) const noexcept;
    /// E[V * 1{lo < V < hi}].
    double moment_open(double lo, double hi) const noexcept;

    double mean() const noexcept;

    /// Inverse-CDF sample of the value for a uniform u in [0,1).
    double value_at_uniform(double u) const noexcept;
    AugmentedValue sample(Rng& rng) const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    Distribution(DistributionKind kind, std::vector<double> xs, std::vector<double> left,
                 std::vector<double> right);

    // Index of the breakpoint equal to x, or npos.
    std::size_t find_breakpoint(double x) const noexcept;

    DistributionKind kind_;
    std::vector<double> xs_;
    std::vector<double> left_;
    std::vector<double> right_;

    friend Distribution product_max(std::span<const Distribution> ds);
    friend Distribution nth_root(const Distribution& d, int n);
};

double cdf(const Distribution& d, double x) noexcept;

/// Randomized threshold whose induced rejection probability under `d` is
/// exactly q; the leftmost such point when the CDF is flat.
RandomizedThreshold quantile_threshold(const Distribution& d, Quantile q);

/// Law of the maximum of independent draws: CDF is the pointwise product.
/// Piecewise inputs are exact at the merged breakpoints.
Distribution product_max(std::span<const Distribution> ds);

/// Law whose CDF is the n-th root of d's CDF.
Distribution nth_root(const Distribution& d, int n);

/// Pr[max_i V_i is rejected] = prod_i reject_prob(V_i). Independent tiebreaks
/// per reward make this the exact rejection law of the maximum.
double product_reject_prob(std::span<const Distribution> ds, const RandomizedThreshold& th) noexcept;

/// Exact pointwise product of the CDFs (no breakpoint interpolation).
double product_cdf(std::span<const Distribution> ds, double x) noexcept;

/// Randomized threshold with product_reject_prob(ds, th) = q. The tiebreak
/// coordinate is solved against the product of per-law rejection
/// probabilities, so each factor can be reused as a per-reward quantity.
RandomizedThreshold product_quantile_threshold(std::span<const Distribution> ds, Quantile q);

/// Sorted union of the breakpoints of `ds`.
std::vector<double> merged_breakpoints(std::span<const Distribution> ds);

/// As above with a precomputed merged_breakpoints(ds) grid.
RandomizedThreshold product_quantile_threshold(std::span<const Distribution> ds,
                                               std::span<const double> grid, Quantile q);

} // namespace prophet
