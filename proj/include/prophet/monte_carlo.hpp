#pragma once

#include <cstdint>
#include <vector>

#include "prophet/eval_result.hpp"
#include "prophet/instance.hpp"
#include "prophet/policies.hpp"

namespace prophet {

enum class CiMethod { Normal, Hoeffding };

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct McConfig {
    std::uint64_t replications = 100000;
    std::uint64_t master_seed = 1;
    CiMethod ci_method = CiMethod::Normal;
    /// Upper bound on any selected value; required for Hoeffding widths.
    double value_cap = 0.0;
    bool parallel = true;
};

/// Replications per reduction block. Block partial sums are combined in
/// block order, so results do not depend on the worker count.
inline constexpr std::uint64_t kMcBlock = 4096;

/// value_cap * sqrt(ln(2 / 0.01) / (2 n)).
double hoeffding_half_width(double value_cap, std::uint64_t n);

EvalResult estimate_expected_value(const Instance& inst, const Policy& policy, const McConfig& cfg);
/// Fraction of replications selecting a value strictly above x.
EvalResult estimate_exceedance(const Instance& inst, const Policy& policy, double x, const McConfig& cfg);
/// Fraction of replications that never stop.
EvalResult estimate_no_stop(const Instance& inst, const Policy& policy, const McConfig& cfg);

/// Selected value of every replication in replication order (0 when the
/// policy never stops).
std::vector<double> simulate_selected_values(const Instance& inst, const Policy& policy, const McConfig& cfg);

/// Exceedance estimate for x from simulate_selected_values output.
EvalResult exceedance_from_values(const std::vector<double>& values, double x, const McConfig& cfg);

} // namespace prophet
