#include "prophet/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prophet/quadrature.hpp"

namespace prophet {

namespace {

constexpr int kExactOrder = 33;
constexpr std::size_t kMaxExactRewards = 65;

double overlap(double a, double b, double t) noexcept { return std::max(0.0, std::min(b, t) - a); }

// Survival of one reward of a group: S(t) = (1 - t) + R_r + reject_r (t - s_r)
// on piece r, where R_r = integral_0^{s_r} reject.
struct Survival {
    std::vector<double> base;

    Survival(const std::vector<double>& bps, const RewardGroup& g) : base(bps.size(), 0.0) {
        for (std::size_t r = 0; r + 1 < bps.size(); ++r) {
            base[r + 1] = base[r] + g.reject[r] * (bps[r + 1] - bps[r]);
        }
    }

    double at(const std::vector<double>& bps, const RewardGroup& g, std::size_t r, double t) const noexcept {
        return (1.0 - t) + base[r] + g.reject[r] * (t - bps[r]);
    }
};

double ipow(double x, int e) noexcept {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

struct Kernel {
    const std::vector<double>& bps;
    const std::vector<RewardGroup>& groups;
    std::vector<Survival> survival;
    bool log_space;
    double term_tol;

    Kernel(const std::vector<double>& b, const std::vector<RewardGroup>& g, const IntegrationConfig& cfg)
        : bps(b), groups(g) {
        std::size_t n = 0;
        for (const auto& grp : groups) {
            survival.emplace_back(bps, grp);
            n += static_cast<std::size_t>(grp.multiplicity);
        }
        log_space = n > kMaxExactRewards;
        const std::size_t terms = std::max<std::size_t>(1, groups.size() * (bps.size() - 1));
        term_tol = cfg.abs_tol / static_cast<double>(terms);
    }

    double log_integrand(std::size_t g, std::size_t r, double t) const noexcept {
        double log_prod = 0.0;
        for (std::size_t h = 0; h < groups.size(); ++h) {
            const int e = groups[h].multiplicity - (h == g ? 1 : 0);
            if (e > 0) log_prod += e * std::log(survival[h].at(bps, groups[h], r, t));
        }
        return groups[g].payoff[r] * std::exp(log_prod);
    }

    // Contributions of every group on piece r, each scaled by its multiplicity.
    // The exact path shares the survival values of a node across groups.
    void piece(std::size_t r, double* out) const {
        const std::size_t ng = groups.size();
        const double a = bps[r];
        const double b = bps[r + 1];
        if (log_space) {
            for (std::size_t g = 0; g < ng; ++g) {
                out[g] = 0.0;
                if (groups[g].payoff[r] == 0.0 || groups[g].multiplicity == 0) continue;
                const double m = static_cast<double>(groups[g].multiplicity);
                auto f = [&](double t) { return log_integrand(g, r, t); };
                out[g] = m * adaptive_gauss_legendre(f, a, b, term_tol / m, kExactOrder);
            }
            return;
        }
        const GaussLegendreRule& rule = gauss_legendre_rule(kExactOrder);
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        std::vector<double> s(ng);
        std::vector<double> full(ng);
        std::vector<double> acc(ng, 0.0);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = mid + half * rule.nodes[q];
            for (std::size_t h = 0; h < ng; ++h) {
                s[h] = survival[h].at(bps, groups[h], r, t);
                full[h] = ipow(s[h], groups[h].multiplicity);
            }
            for (std::size_t g = 0; g < ng; ++g) {
                if (groups[g].payoff[r] == 0.0 || groups[g].multiplicity == 0) continue;
                double prod = ipow(s[g], groups[g].multiplicity - 1);
                for (std::size_t h = 0; h < ng; ++h) {
                    if (h != g) prod *= full[h];
                }
                acc[g] += rule.weights[q] * prod;
            }
        }
        for (std::size_t g = 0; g < ng; ++g) {
            out[g] = static_cast<double>(groups[g].multiplicity) * groups[g].payoff[r] * half * acc[g];
        }
    }
};

void validate_groups(const std::vector<double>& bps, const std::vector<RewardGroup>& groups) {
    if (bps.size() < 2) throw Error(ErrorKind::InvalidParameter, "integral needs at least one time piece");
    const std::size_t pieces = bps.size() - 1;
    for (const auto& g : groups) {
        if (g.accept.size() != pieces || g.reject.size() != pieces || g.payoff.size() != pieces) {
            throw Error(ErrorKind::InvalidParameter, "reward group rows must have one entry per piece");
        }
        if (g.multiplicity < 0) throw Error(ErrorKind::InvalidParameter, "negative group multiplicity");
    }
}

RewardGroup make_group(std::size_t pieces, int multiplicity) {
    RewardGroup g;
    g.accept.resize(pieces);
    g.reject.resize(pieces);
    g.payoff.resize(pieces);
    g.multiplicity = multiplicity;
    return g;
}

template <class Payoff>
std::vector<RewardGroup> threshold_groups_with(const Instance& inst, const ThresholdSchedule& schedule,
                                               Payoff payoff) {
    std::vector<RewardGroup> out;
    for (const auto& d : inst.base) {
        RewardGroup g = make_group(schedule.pieces(), inst.copies);
        for (std::size_t r = 0; r < schedule.pieces(); ++r) {
            const RandomizedThreshold& th = schedule.threshold(r);
            g.accept[r] = d.accept_prob(th);
            g.reject[r] = d.reject_prob(th);
            g.payoff[r] = payoff(d, th);
        }
        out.push_back(std::move(g));
    }
    return out;
}

template <class Payoff>
std::vector<RewardGroup> activation_groups_with(const Instance& inst, const ActivationPolicy& act,
                                                Payoff payoff) {
    if (act.identities() != inst.n() || act.copies() != inst.copies) {
        throw Error(ErrorKind::PolicyMismatch, "activation policy shape differs from the instance");
    }
    std::vector<RewardGroup> out;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const Distribution& d = inst.base[i];
        const ValueBuckets& vb = act.buckets(i);
        std::vector<double> mass(vb.count());
        for (std::size_t b = 0; b < vb.count(); ++b) mass[b] = vb.mass(d, b);
        const std::size_t first = out.size();
        for (int j = 0; j < inst.copies; ++j) {
            RewardGroup g = make_group(act.pieces(), 1);
            for (std::size_t r = 0; r < act.pieces(); ++r) {
                double acc = 0.0;
                double rej = 0.0;
                double pay = 0.0;
                for (std::size_t b = 0; b < vb.count(); ++b) {
                    const double p = act.prob(r, i, static_cast<std::size_t>(j), b);
                    acc += mass[b] * p;
                    rej += mass[b] * (1.0 - p);
                    if (p > 0.0) pay += p * payoff(d, vb, b);
                }
                g.accept[r] = acc;
                g.reject[r] = rej;
                g.payoff[r] = pay;
            }
            auto same = std::find_if(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                                     [&](const RewardGroup& o) {
                                         return o.accept == g.accept && o.reject == g.reject && o.payoff == g.payoff;
                                     });
            if (same != out.end()) {
                ++same->multiplicity;
            } else {
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

} // namespace

double p_tau_single(const ThresholdSchedule& schedule, const Distribution& d, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidParameter, "time must lie in [0,1]");
    double p = 0.0;
    for (std::size_t r = 0; r < schedule.pieces(); ++r) {
        const double len = overlap(schedule.start(r), schedule.end(r), t);
        if (len > 0.0) p += len * d.accept_prob(schedule.threshold(r));
    }
    return p;
}

double reach_probability(const StopProbQuery& query) {
    double survive = 1.0;
    for (const auto& [d, mult] : query.dist_multiset) {
        if (mult < 1) throw Error(ErrorKind::InvalidParameter, "multiplicities must be >= 1");
        survive *= std::pow(1.0 - p_tau_single(query.schedule, d, query.t), mult);
    }
    return survive;
}

double p_tau_multi(const StopProbQuery& query) { return 1.0 - reach_probability(query); }

double first_acceptance_integral(const std::vector<double>& breakpoints, const std::vector<RewardGroup>& groups,
                                 const IntegrationConfig& cfg) {
    validate_groups(breakpoints, groups);
    if (!cfg.parallel) return first_acceptance_integral_serial(breakpoints, groups, cfg);
    const Kernel kernel(breakpoints, groups, cfg);
    const std::size_t ng = groups.size();
    const auto pieces = static_cast<std::ptrdiff_t>(breakpoints.size() - 1);
    std::vector<double> values(static_cast<std::size_t>(pieces) * ng, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t r = 0; r < pieces; ++r) {
        kernel.piece(static_cast<std::size_t>(r), values.data() + static_cast<std::size_t>(r) * ng);
    }
    double total = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
        for (std::size_t r = 0; r < static_cast<std::size_t>(pieces); ++r) total += values[r * ng + g];
    }
    return total;
}

double first_acceptance_integral_serial(const std::vector<double>& breakpoints,
                                        const std::vector<RewardGroup>& groups, const IntegrationConfig& cfg) {
    validate_groups(breakpoints, groups);
    const Kernel kernel(breakpoints, groups, cfg);
    const std::size_t ng = groups.size();
    const std::size_t pieces = breakpoints.size() - 1;
    std::vector<double> values(pieces * ng, 0.0);
    for (std::size_t r = 0; r < pieces; ++r) kernel.piece(r, values.data() + r * ng);
    double total = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
        for (std::size_t r = 0; r < pieces; ++r) total += values[r * ng + g];
    }
    return total;
}

double log_no_stop(const std::vector<double>& breakpoints, const std::vector<RewardGroup>& groups) {
    validate_groups(breakpoints, groups);
    double total = 0.0;
    for (const auto& g : groups) {
        if (g.multiplicity == 0) continue;
        double s = 0.0;
        for (std::size_t r = 0; r + 1 < breakpoints.size(); ++r) {
            s += g.reject[r] * (breakpoints[r + 1] - breakpoints[r]);
        }
        if (s <= 0.0) return -std::numeric_limits<double>::infinity();
        total += g.multiplicity * std::log(s);
    }
    return total;
}

std::vector<RewardGroup> threshold_groups(const Instance& inst, const ThresholdSchedule& schedule) {
    return threshold_groups_with(inst, schedule, [](const Distribution& d, const RandomizedThreshold& th) {
        return d.accepted_mean(th);
    });
}

std::vector<RewardGroup> threshold_exceedance_groups(const Instance& inst, const ThresholdSchedule& schedule,
                                                     double x) {
    return threshold_groups_with(inst, schedule, [x](const Distribution& d, const RandomizedThreshold& th) {
        // Below tau every accepted value exceeds x; from tau on, V > x implies acceptance.
        return x < th.tau ? d.accept_prob(th) : 1.0 - d.cdf(x);
    });
}

std::vector<RewardGroup> activation_groups(const Instance& inst, const ActivationPolicy& act) {
    return activation_groups_with(inst, act, [](const Distribution& d, const ValueBuckets& vb, std::size_t b) {
        return vb.moment(d, b);
    });
}

std::vector<RewardGroup> activation_exceedance_groups(const Instance& inst, const ActivationPolicy& act, double x) {
    return activation_groups_with(inst, act, [x](const Distribution& d, const ValueBuckets& vb, std::size_t b) {
        return vb.mass_above(d, b, x);
    });
}

EvalResult expected_value_threshold(const Instance& inst, const ThresholdSchedule& schedule,
                                    const IntegrationConfig& cfg) {
    const double v = first_acceptance_integral(schedule.breakpoints(), threshold_groups(inst, schedule), cfg);
    return {v, cfg.abs_tol, Method::Exact, 0, 0};
}

double exceedance_threshold(const Instance& inst, const ThresholdSchedule& schedule, double x,
                            const IntegrationConfig& cfg) {
    return first_acceptance_integral(schedule.breakpoints(), threshold_exceedance_groups(inst, schedule, x), cfg);
}

double log_no_stop_threshold(const Instance& inst, const ThresholdSchedule& schedule) {
    return log_no_stop(schedule.breakpoints(), threshold_groups(inst, schedule));
}

EvalResult expected_value_activation(const Instance& inst, const ActivationPolicy& act,
                                     const IntegrationConfig& cfg) {
    const double v = first_acceptance_integral(act.breakpoints(), activation_groups(inst, act), cfg);
    return {v, cfg.abs_tol, Method::Exact, 0, 0};
}

double exceedance_activation(const Instance& inst, const ActivationPolicy& act, double x,
                             const IntegrationConfig& cfg) {
    return first_acceptance_integral(act.breakpoints(), activation_exceedance_groups(inst, act, x), cfg);
}

double log_no_stop_activation(const Instance& inst, const ActivationPolicy& act) {
    return log_no_stop(act.breakpoints(), activation_groups(inst, act));
}

} // namespace prophet
