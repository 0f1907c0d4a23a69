#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "prophet/distributions.hpp"
#include "prophet/eval_result.hpp"
#include "prophet/instance.hpp"
#include "prophet/policies.hpp"

namespace prophet {

struct IntegrationConfig {
    double abs_tol = 1e-9;
    bool parallel = true;
};

/// Threshold algorithm over a multiset of independent laws, each observed
/// `multiplicity` times, asked for the probability of stopping before t.
struct StopProbQuery {
    ThresholdSchedule schedule;
    std::vector<std::pair<Distribution, int>> dist_multiset;
    double t = 1.0;
};

/// Pr[arrival before t and accepted by the schedule at its arrival time].
double p_tau_single(const ThresholdSchedule& schedule, const Distribution& d, double t);

/// 1 - prod over the multiset of (1 - p_tau_single).
double p_tau_multi(const StopProbQuery& query);

/// Pr[no stop strictly before t] = 1 - p_tau_multi.
double reach_probability(const StopProbQuery& query);

/// Rewards sharing a time-piecewise-constant acceptance law. On piece r a
/// reward arriving at t is accepted with probability accept[r] and then pays
/// payoff[r] in expectation; reject[r] = 1 - accept[r] is kept separately so
/// survival probabilities are sums of nonnegative terms.
struct RewardGroup {
    std::vector<double> accept;
    std::vector<double> reject;
    std::vector<double> payoff;
    int multiplicity = 1;
};

/// sum_g M_g * integral_0^1 payoff_g(t) S_g(t)^(M_g - 1) prod_{g' != g} S_g'(t)^M_g' dt,
/// with S_g(t) = 1 - integral_0^t accept_g the probability that one reward of
/// group g has not been accepted before t. The integrand is a polynomial of
/// degree N - 1 on each piece: Gauss-Legendre of order 33 is exact up to
/// N = 65, beyond that pieces are refined adaptively in log space.
double first_acceptance_integral(const std::vector<double>& breakpoints, const std::vector<RewardGroup>& groups,
                                 const IntegrationConfig& cfg);

/// Reference version: same terms, serial loop, same summation order.
double first_acceptance_integral_serial(const std::vector<double>& breakpoints,
                                        const std::vector<RewardGroup>& groups, const IntegrationConfig& cfg);

/// ln Pr[no reward is ever accepted] = sum_g M_g ln S_g(1).
double log_no_stop(const std::vector<double>& breakpoints, const std::vector<RewardGroup>& groups);

std::vector<RewardGroup> threshold_groups(const Instance& inst, const ThresholdSchedule& schedule);
/// Payoff is Pr[accepted and V > x].
std::vector<RewardGroup> threshold_exceedance_groups(const Instance& inst, const ThresholdSchedule& schedule,
                                                     double x);
/// Copies with identical activation rows are merged into one group.
std::vector<RewardGroup> activation_groups(const Instance& inst, const ActivationPolicy& act);
std::vector<RewardGroup> activation_exceedance_groups(const Instance& inst, const ActivationPolicy& act, double x);

EvalResult expected_value_threshold(const Instance& inst, const ThresholdSchedule& schedule,
                                    const IntegrationConfig& cfg = {});
double exceedance_threshold(const Instance& inst, const ThresholdSchedule& schedule, double x,
                            const IntegrationConfig& cfg = {});
double log_no_stop_threshold(const Instance& inst, const ThresholdSchedule& schedule);

EvalResult expected_value_activation(const Instance& inst, const ActivationPolicy& act,
                                     const IntegrationConfig& cfg = {});
double exceedance_activation(const Instance& inst, const ActivationPolicy& act, double x,
                             const IntegrationConfig& cfg = {});
double log_no_stop_activation(const Instance& inst, const ActivationPolicy& act);

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Per-identity (value, probability) atoms in the working precision.
template <class Real>
using AtomTable = std::vector<std::vector<std::pair<Real, Real>>>;

constexpr std::size_t kDefaultDpStateCap = 1'000'000;

/// Optimal online value in the uniform-random-order model:
/// V(c) = sum_i c_i/|c| * E[max(V_i, V(c - e_i))] over remaining-count
/// vectors c, evaluated bottom-up.
template <class Real>
Real optimal_online_value(const AtomTable<Real>& atoms, int copies, std::size_t state_cap = kDefaultDpStateCap);

extern template double optimal_online_value<double>(const AtomTable<double>&, int, std::size_t);
extern template HighPrecision optimal_online_value<HighPrecision>(const AtomTable<HighPrecision>&, int,
                                                                  std::size_t);

/// Requires every base law to be discrete.
EvalResult optimal_online_dp(const Instance& inst, std::size_t state_cap = kDefaultDpStateCap);

} // namespace prophet
