#include "prophet/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace prophet {

namespace {

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

template <class Stat>
Moments run_block(const Instance& inst, const Policy& policy, const McConfig& cfg, std::uint64_t block,
                  Stat stat) {
    Moments m;
    ArrivalSequence seq;
    const std::uint64_t lo = block * kMcBlock;
    const std::uint64_t hi = std::min(cfg.replications, lo + kMcBlock);
    for (std::uint64_t r = lo; r < hi; ++r) {
        Rng rng = make_substream(cfg.master_seed, r);
        sample_arrivals_into(inst, rng, seq);
        const double x = stat(run_policy(policy, seq));
        m.sum += x;
        m.sum_sq += x * x;
    }
    return m;
}

template <class Stat>
EvalResult estimate(const Instance& inst, const Policy& policy, const McConfig& cfg, double cap, Stat stat) {
    if (cfg.replications < 1) throw Error(ErrorKind::InvalidParameter, "replications must be >= 1");
    const std::uint64_t blocks = (cfg.replications + kMcBlock - 1) / kMcBlock;
    std::vector<Moments> partial(blocks);
    if (cfg.parallel) {
        const auto nb = static_cast<std::int64_t>(blocks);
        // Policy errors are rethrown after the loop; exceptions must not cross it.
        bool failed = false;
        Error first_error(ErrorKind::Config, "");
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < nb; ++b) {
            try {
                partial[static_cast<std::size_t>(b)] =
                    run_block(inst, policy, cfg, static_cast<std::uint64_t>(b), stat);
            } catch (const Error& e) {
#pragma omp critical
                {
                    if (!failed) first_error = e;
                    failed = true;
                }
            }
        }
        if (failed) throw first_error;
    } else {
        for (std::uint64_t b = 0; b < blocks; ++b) partial[b] = run_block(inst, policy, cfg, b, stat);
    }

    Moments total;
    for (const auto& m : partial) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
    }
    const double n = static_cast<double>(cfg.replications);
    const double mean = total.sum / n;
    double half = 0.0;
    if (cfg.ci_method == CiMethod::Hoeffding) {
        half = hoeffding_half_width(cap, cfg.replications);
    } else if (cfg.replications > 1) {
        const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0));
        half = kZ99 * std::sqrt(var / n);
    }
    return {mean, half, Method::MonteCarlo, cfg.replications, cfg.master_seed};
}

} // namespace

double hoeffding_half_width(double value_cap, std::uint64_t n) {
    return value_cap * std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
}

EvalResult estimate_expected_value(const Instance& inst, const Policy& policy, const McConfig& cfg) {
    if (cfg.ci_method == CiMethod::Hoeffding && cfg.value_cap < inst.support_max()) {
        throw Error(ErrorKind::InvalidParameter, "Hoeffding CI needs value_cap >= the instance's support max");
    }
    return estimate(inst, policy, cfg, cfg.value_cap, [](const StopOutcome& o) { return o.value; });
}

EvalResult estimate_exceedance(const Instance& inst, const Policy& policy, double x, const McConfig& cfg) {
    return estimate(inst, policy, cfg, 1.0,
                    [x](const StopOutcome& o) { return o.stopped && o.value > x ? 1.0 : 0.0; });
}

EvalResult estimate_no_stop(const Instance& inst, const Policy& policy, const McConfig& cfg) {
    return estimate(inst, policy, cfg, 1.0, [](const StopOutcome& o) { return o.stopped ? 0.0 : 1.0; });
}

std::vector<double> simulate_selected_values(const Instance& inst, const Policy& policy, const McConfig& cfg) {
    if (cfg.replications < 1) throw Error(ErrorKind::InvalidParameter, "replications must be >= 1");
    std::vector<double> values(cfg.replications, 0.0);
    const auto n = static_cast<std::int64_t>(cfg.replications);
    auto one = [&](std::int64_t r) {
        Rng rng = make_substream(cfg.master_seed, static_cast<std::uint64_t>(r));
        ArrivalSequence seq = sample_arrivals(inst, rng);
        values[static_cast<std::size_t>(r)] = run_policy(policy, seq).value;
    };
    if (cfg.parallel) {
        bool failed = false;
        Error first_error(ErrorKind::Config, "");
#pragma omp parallel for schedule(dynamic, 1024)
        for (std::int64_t r = 0; r < n; ++r) {
            try {
                one(r);
            } catch (const Error& e) {
#pragma omp critical
                {
                    if (!failed) first_error = e;
                    failed = true;
                }
            }
        }
        if (failed) throw first_error;
    } else {
        for (std::int64_t r = 0; r < n; ++r) one(r);
    }
    return values;
}

EvalResult exceedance_from_values(const std::vector<double>& values, double x, const McConfig& cfg) {
    if (values.empty()) throw Error(ErrorKind::InvalidParameter, "no simulated values");
    std::uint64_t hits = 0;
    for (double v : values) hits += v > x ? 1 : 0;
    const double n = static_cast<double>(values.size());
    const double mean = static_cast<double>(hits) / n;
    double half = 0.0;
    if (cfg.ci_method == CiMethod::Hoeffding) {
        half = hoeffding_half_width(1.0, values.size());
    } else if (values.size() > 1) {
        // Bernoulli sample variance with the n - 1 denominator.
        half = kZ99 * std::sqrt(std::max(0.0, mean * (1.0 - mean) * n / (n - 1.0)) / n);
    }
    return {mean, half, Method::MonteCarlo, values.size(), cfg.master_seed};
}

} // namespace prophet
