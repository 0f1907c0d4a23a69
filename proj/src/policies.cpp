#include "prophet/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace prophet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_breakpoints(const std::vector<double>& bps, std::size_t pieces) {
    if (pieces == 0 || bps.size() != pieces + 1) {
        throw Error(ErrorKind::InvalidParameter, "schedule needs pieces + 1 breakpoints");
    }
    if (bps.front() != 0.0 || bps.back() != 1.0) {
        throw Error(ErrorKind::InvalidParameter, "schedule breakpoints must run from 0 to 1");
    }
    for (std::size_t r = 0; r + 1 < bps.size(); ++r) {
        if (!(bps[r + 1] > bps[r])) {
            throw Error(ErrorKind::InvalidParameter, "schedule breakpoints must be strictly increasing");
        }
    }
}

std::size_t piece_index(const std::vector<double>& bps, double t) noexcept {
    auto it = std::upper_bound(bps.begin(), bps.end(), t);
    std::size_t r = it == bps.begin() ? 0 : static_cast<std::size_t>(it - bps.begin()) - 1;
    return std::min(r, bps.size() - 2);
}

StopOutcome stop_at(const ArrivalEvent& e) {
    return {true, e.time, e.value.value, e.identity, e.copy};
}

} // namespace

ThresholdSchedule::ThresholdSchedule(std::vector<double> breakpoints,
                                     std::vector<RandomizedThreshold> thresholds)
    : breakpoints_(std::move(breakpoints)), thresholds_(std::move(thresholds)) {
    validate_breakpoints(breakpoints_, thresholds_.size());
    for (const auto& th : thresholds_) {
        if (!(th.accept_prob >= 0.0 && th.accept_prob <= 1.0) || !std::isfinite(th.tau)) {
            throw Error(ErrorKind::InvalidParameter, "threshold needs finite tau and accept_prob in [0,1]");
        }
    }
}

ThresholdSchedule ThresholdSchedule::constant(RandomizedThreshold th) {
    return ThresholdSchedule({0.0, 1.0}, {th});
}

std::size_t ThresholdSchedule::piece_at(double t) const noexcept { return piece_index(breakpoints_, t); }

bool ThresholdSchedule::nonincreasing() const noexcept {
    for (std::size_t r = 0; r + 1 < thresholds_.size(); ++r) {
        if (thresholds_[r + 1].cut() > thresholds_[r].cut()) return false;
    }
    return true;
}

ThresholdSchedule ThresholdSchedule::sorted_nonincreasing() const {
    std::vector<std::size_t> order(pieces());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return thresholds_[a].cut() > thresholds_[b].cut();
    });
    std::vector<double> bps{0.0};
    std::vector<RandomizedThreshold> ths;
    double t = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        t += length(order[k]);
        bps.push_back(k + 1 == order.size() ? 1.0 : t);
        ths.push_back(thresholds_[order[k]]);
    }
    return ThresholdSchedule(std::move(bps), std::move(ths));
}

ThresholdSchedule ThresholdSchedule::with_threshold(std::size_t r, RandomizedThreshold th) const {
    ThresholdSchedule out = *this;
    out.thresholds_.at(r) = th;
    return out;
}

ValueBuckets::ValueBuckets(std::vector<double> cuts) : cuts_(std::move(cuts)) {
    std::sort(cuts_.begin(), cuts_.end());
    cuts_.erase(std::unique(cuts_.begin(), cuts_.end()), cuts_.end());
}

std::size_t ValueBuckets::bucket_of(double v) const noexcept {
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), v);
    const std::size_t idx = static_cast<std::size_t>(it - cuts_.begin());
    if (it != cuts_.end() && *it == v) return 2 * idx + 1;
    return 2 * idx;
}

double ValueBuckets::mass(const Distribution& d, std::size_t b) const noexcept {
    if (b % 2 == 1) return d.mass_at(cuts_[b / 2]);
    const double lo = b == 0 ? -kInf : cuts_[b / 2 - 1];
    const double hi = b / 2 == cuts_.size() ? kInf : cuts_[b / 2];
    return d.mass_open(lo, hi);
}

double ValueBuckets::moment(const Distribution& d, std::size_t b) const noexcept {
    if (b % 2 == 1) return cuts_[b / 2] * d.mass_at(cuts_[b / 2]);
    const double lo = b == 0 ? -kInf : cuts_[b / 2 - 1];
    const double hi = b / 2 == cuts_.size() ? kInf : cuts_[b / 2];
    return d.moment_open(lo, hi);
}

double ValueBuckets::mass_above(const Distribution& d, std::size_t b, double x) const noexcept {
    if (b % 2 == 1) return cuts_[b / 2] > x ? d.mass_at(cuts_[b / 2]) : 0.0;
    const double lo = b == 0 ? -kInf : cuts_[b / 2 - 1];
    const double hi = b / 2 == cuts_.size() ? kInf : cuts_[b / 2];
    return d.mass_open(std::max(lo, x), hi);
}

ActivationPolicy::ActivationPolicy(std::vector<double> breakpoints, std::vector<ValueBuckets> buckets,
                                   int copies)
    : breakpoints_(std::move(breakpoints)), buckets_(std::move(buckets)), copies_(copies) {
    if (breakpoints_.size() < 2) {
        throw Error(ErrorKind::InvalidParameter, "activation policy needs at least one time piece");
    }
    validate_breakpoints(breakpoints_, breakpoints_.size() - 1);
    if (buckets_.empty() || copies_ < 1) {
        throw Error(ErrorKind::InvalidParameter, "activation policy needs identities and copies >= 1");
    }
    offsets_.resize(buckets_.size());
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
        offsets_[i] = stride_;
        stride_ += static_cast<std::size_t>(copies_) * buckets_[i].count();
    }
    table_.assign(pieces() * stride_, 0.0);
}

ValueBuckets ActivationPolicy::default_buckets(const Distribution& d) {
    auto xs = d.breakpoints();
    return ValueBuckets(std::vector<double>(xs.begin(), xs.end()));
}

ActivationPolicy ActivationPolicy::from_schedule(const ThresholdSchedule& schedule, const Instance& inst) {
    std::vector<ValueBuckets> buckets;
    for (const auto& d : inst.base) {
        auto xs = d.breakpoints();
        std::vector<double> cuts(xs.begin(), xs.end());
        for (const auto& th : schedule.thresholds()) cuts.push_back(th.tau);
        buckets.emplace_back(std::move(cuts));
    }
    ActivationPolicy act(schedule.breakpoints(), std::move(buckets), inst.copies);
    for (std::size_t r = 0; r < schedule.pieces(); ++r) {
        const RandomizedThreshold& th = schedule.threshold(r);
        for (std::size_t i = 0; i < inst.n(); ++i) {
            const ValueBuckets& vb = act.buckets(i);
            const auto& cuts = vb.cuts();
            for (std::size_t b = 0; b < vb.count(); ++b) {
                double g = 0.0;
                if (b % 2 == 1) {
                    const double c = cuts[b / 2];
                    g = c > th.tau ? 1.0 : (c == th.tau ? th.accept_prob : 0.0);
                } else if (b > 0 && cuts[b / 2 - 1] >= th.tau) {
                    // tau is itself a cut, so an open bucket lies wholly on one side.
                    g = 1.0;
                }
                act.set_all_copies(r, i, b, g);
            }
        }
    }
    return act;
}

std::size_t ActivationPolicy::piece_at(double t) const noexcept { return piece_index(breakpoints_, t); }

void ActivationPolicy::set(std::size_t piece, std::size_t i, std::size_t j, std::size_t bucket, double p) {
    if (piece >= pieces() || i >= identities() || j >= static_cast<std::size_t>(copies_) ||
        bucket >= buckets_[i].count()) {
        throw Error(ErrorKind::InvalidParameter, "activation index out of range");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "activation probability must lie in [0,1]");
    }
    table_[index(piece, i, j, bucket)] = p;
}

void ActivationPolicy::set_all_copies(std::size_t piece, std::size_t i, std::size_t bucket, double p) {
    for (int j = 0; j < copies_; ++j) set(piece, i, static_cast<std::size_t>(j), bucket, p);
}

double AdaptiveTwoThreshold::log_inv_epsilon() const noexcept { return -std::log(epsilon); }

double AdaptiveTwoThreshold::log_inv_q(const std::vector<int>& counts) const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<double>(counts[i]) * w[i];
    return s;
}

ThresholdSchedule make_single_threshold(const OptLaw& opt) {
    return ThresholdSchedule::constant(opt.threshold_at(0.5));
}

double blind_quantile(double t, int k) noexcept {
    const double kk = static_cast<double>(k);
    if (t <= 2.0 / kk) return 0.5;
    return 1.0 / (t * kk);
}

ThresholdSchedule make_blind_schedule(const OptLaw& opt, int k, int grid_resolution) {
    if (k < 1) throw Error(ErrorKind::InvalidParameter, "blind schedule needs k >= 1");
    if (grid_resolution < 1) throw Error(ErrorKind::InvalidParameter, "grid_resolution must be >= 1");
    const double switch_t = 2.0 / static_cast<double>(k);
    const RandomizedThreshold median = opt.threshold_at(0.5);
    if (switch_t >= 1.0) return ThresholdSchedule::constant(median);

    std::vector<double> bps{0.0, switch_t};
    std::vector<RandomizedThreshold> ths{median};
    const double h = (1.0 - switch_t) / grid_resolution;
    for (int r = 0; r < grid_resolution; ++r) {
        const double t0 = switch_t + r * h;
        bps.push_back(r + 1 == grid_resolution ? 1.0 : switch_t + (r + 1) * h);
        ths.push_back(opt.threshold_at(blind_quantile(t0, k)));
    }
    return ThresholdSchedule(std::move(bps), std::move(ths));
}

int ell_for_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= std::exp(-1.0) * (1.0 + 1e-12))) {
        throw Error(ErrorKind::InvalidParameter, "epsilon must lie in (0, 1/e], got " + std::to_string(epsilon));
    }
    // The 1e-9 guard keeps exact squares (eps = e^{-l^2}) at l.
    return std::max(1, static_cast<int>(std::ceil(std::sqrt(-std::log(epsilon)) - 1e-9)));
}

AdaptiveTwoThreshold make_adaptive(const OptLaw& opt, const Instance& inst, double epsilon) {
    AdaptiveTwoThreshold a;
    a.epsilon = epsilon;
    a.ell = ell_for_epsilon(epsilon);
    a.copies = inst.copies;
    a.tau1 = opt.threshold_at(0.75);
    a.tau2 = opt.threshold_at(std::exp(-static_cast<double>(a.ell)));
    for (const auto& d : inst.base) {
        const double qi = d.reject_prob(a.tau2);
        a.q.push_back(qi);
        a.w.push_back(-std::log(qi));
    }
    return a;
}

StopOutcome run_policy(const ThresholdSchedule& schedule, const ArrivalSequence& seq) {
    for (const auto& e : seq.events) {
        if (schedule.threshold_at(e.time).accepts(e.value)) return stop_at(e);
    }
    return {};
}

StopOutcome run_policy(const ActivationPolicy& policy, const ArrivalSequence& seq) {
    for (const auto& e : seq.events) {
        const auto i = static_cast<std::size_t>(e.identity);
        const auto j = static_cast<std::size_t>(e.copy);
        if (e.identity < 0 || i >= policy.identities() || e.copy < 0 || e.copy >= policy.copies()) {
            throw Error(ErrorKind::PolicyMismatch, "arrival outside the activation policy's instance shape");
        }
        const std::size_t b = policy.buckets(i).bucket_of(e.value.value);
        const double g = policy.prob(policy.piece_at(e.time), i, j, b);
        if (e.value.tiebreak >= 1.0 - g) return stop_at(e);
    }
    return {};
}

namespace {

std::vector<int> initial_counts(const AdaptiveTwoThreshold& policy, const ArrivalSequence& seq) {
    if (seq.events.size() != policy.identities() * static_cast<std::size_t>(policy.copies)) {
        throw Error(ErrorKind::PolicyMismatch, "arrival count does not match the adaptive policy's instance");
    }
    for (const auto& e : seq.events) {
        if (e.identity < 0 || static_cast<std::size_t>(e.identity) >= policy.identities()) {
            throw Error(ErrorKind::PolicyMismatch, "arrival identity outside the adaptive policy's instance");
        }
    }
    return std::vector<int>(policy.identities(), policy.copies);
}

} // namespace

namespace {

// q <= eps in log form. With eps = e^{-ell^2} and q-products of whole
// e^{-ell} factors, exact ties are common; they count as reaching eps.
bool reaches_epsilon(double log_inv_q, double log_inv_eps) noexcept {
    return log_inv_q >= log_inv_eps - 1e-12 * std::max(1.0, log_inv_eps);
}

} // namespace

StopOutcome run_policy(const AdaptiveTwoThreshold& policy, const ArrivalSequence& seq,
                       std::vector<Phase>* trace) {
    std::vector<int> remaining = initial_counts(policy, seq);
    const double bound = policy.log_inv_epsilon();
    if (trace) trace->clear();
    for (const auto& e : seq.events) {
        // remaining = rewards arriving strictly after this one.
        --remaining[static_cast<std::size_t>(e.identity)];
        const bool second = !reaches_epsilon(policy.log_inv_q(remaining), bound);
        if (trace) trace->push_back(second ? Phase::Second : Phase::First);
        const RandomizedThreshold& th = second ? policy.tau2 : policy.tau1;
        if (th.accepts(e.value)) return stop_at(e);
    }
    return {};
}

StopOutcome run_policy(const Policy& policy, const ArrivalSequence& seq) {
    return std::visit([&](const auto& p) { return run_policy(p, seq); }, policy);
}

double switch_time_S(const AdaptiveTwoThreshold& policy, const ArrivalSequence& seq) {
    std::vector<int> suffix = initial_counts(policy, seq);
    const double bound = policy.log_inv_epsilon();
    // suffix holds events m..N-1; q(t_m) <= eps iff its weight reaches the bound.
    double s = 0.0;
    for (const auto& e : seq.events) {
        if (reaches_epsilon(policy.log_inv_q(suffix), bound)) s = e.time;
        --suffix[static_cast<std::size_t>(e.identity)];
    }
    return s;
}

} // namespace prophet
