#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prophet/eval_result.hpp"
#include "prophet/exact_oracle.hpp"
#include "prophet/instance.hpp"
#include "prophet/monte_carlo.hpp"
#include "prophet/policies.hpp"

namespace prophet {

enum class AlgorithmClass { Single, Blind, General };
enum class Evaluator { Exact, MonteCarlo };

const char* to_string(AlgorithmClass c) noexcept;
const char* to_string(Evaluator e) noexcept;
AlgorithmClass parse_algorithm_class(const std::string& s);
Evaluator parse_evaluator(const std::string& s);

/// Sufficient k from the class's upper bound: ceil(2 ln(1/eps)) for single,
/// ceil(2 ln(1/eps) / ln ln(1/eps)) for blind (2 when ln ln(1/eps) <= 0,
/// where the schedule is the median rule), 8 ell for general.
int paper_bound_k(AlgorithmClass cls, double epsilon);

struct ExperimentOptions {
    int grid_resolution = 512;
    IntegrationConfig integration;
    McConfig mc;
};

struct KSearchRow {
    int k = 0;
    std::string candidate;
    EvalResult result;
    double target = 0.0;
    bool pass = false;
};

struct KSearchResult {
    double epsilon = 0.0;
    AlgorithmClass cls = AlgorithmClass::Single;
    Evaluator evaluator = Evaluator::Exact;
    double expected_opt = 0.0;
    int cap = 0;
    std::optional<int> found_k;
    int paper_bound_k = 0;
    std::vector<KSearchRow> rows;
};

/// Scans k = 1..cap and stops at the first k where some candidate of the
/// class reaches (1 - eps) E[OPT] within its error bound. The general class
/// tries the adaptive rule (always Monte Carlo) and, since it contains them,
/// the single and blind schedules.
KSearchResult search_k(const std::vector<Distribution>& base, double epsilon, AlgorithmClass cls,
                       Evaluator evaluator, int cap, const ExperimentOptions& opts = {});

struct DominanceRow {
    double quantile = 0.0;
    double x = 0.0;
    double p_alg = 0.0;
    double p_opt_scaled = 0.0;
    double margin = 0.0;
    double half_width = 0.0;
};

struct DominanceReport {
    double epsilon = 0.0;
    Method method = Method::Exact;
    std::vector<DominanceRow> rows;
    double min_margin = 0.0;
    double max_half_width = 0.0;
};

/// x-grid of the dominance check: OPT value quantiles 0.01..0.99, the given
/// boundary quantiles, x = 0 and every base breakpoint, sorted and deduplicated.
std::vector<double> dominance_grid(const OptLaw& opt, const std::vector<double>& boundary_quantiles);

/// Pr[ALG > x] against (1 - eps) Pr[OPT > x] on dominance_grid. Exact for
/// schedules and activation policies; the adaptive rule is always simulated.
DominanceReport dominance_check(const Instance& inst, const Policy& policy, double epsilon, Evaluator evaluator,
                                const ExperimentOptions& opts = {});

/// Boundary quantiles for the class: the median and 1 - 1/k, plus 3/4 and
/// e^-ell for the adaptive rule.
std::vector<double> case_boundaries(const Policy& policy, int k);

/// L = ln(1/eps) with k = L / (4 ln L), taking the root above e.
double solve_log_inv_epsilon_for_k(int k);

struct SwitchRow {
    double t = 0.0;
    double p_high = 0.0;
    double log_p_none = 0.0;
    double normalized_margin = 0.0;
};

/// Two-type instance: a deterministic 1 and a reward that is 1 + sqrt(eps)
/// with probability 1 - p, else 0; k copies each. Values enter the policies
/// only through their order, so the oracle runs on the surrogate values
/// {0, 1, 2} and E[ALG] = 1 - Pr[none] + sqrt(eps) Pr[high]. Margins are
/// reported as (E[ALG] - (1 - eps) E[OPT]) / sqrt(eps).
struct TimeHardnessReport {
    int k = 0;
    double p = 0.0;
    double log_inv_epsilon = 0.0;
    std::vector<SwitchRow> rows;
    double best_t = 0.0;
    double best_margin = 0.0;
    double closed_form_p_high_t0 = 0.0;
    double oracle_p_high_t0 = 0.0;
    double case1_bad_order_at_boundary = 0.0;
    double case1_min_over_k = 0.0;
    double case2_log_bound_at_boundary = 0.0;
    bool arithmetic_ok = false;
    bool certified = false;
};

TimeHardnessReport hardness_time_based(int k = 25, std::optional<double> p = std::nullopt,
                                       std::optional<double> log_inv_epsilon = std::nullopt,
                                       int grid_points = 1000, const IntegrationConfig& cfg = {});

struct BadOrderRow {
    int k = 0;
    std::string exact;
    double value = 0.0;
    double four_pow_neg_k = 0.0;
    bool pass = false;
};

struct GeneralHardnessReport {
    std::vector<BadOrderRow> bad_order;
    int k = 0;
    double p = 0.0;
    double log_inv_epsilon = 0.0;
    /// (value - 1) / sqrt(eps) for the online optimum, the target and the ceiling.
    double dp_normalized = 0.0;
    double target_normalized = 0.0;
    double ceiling_normalized = 0.0;
    std::string dp_value;
    std::string target_value;
    bool side_condition = false;
    bool below_target = false;
    bool below_ceiling = false;
    bool certified = false;
};

/// Exact bad-order probabilities for k = 1..max_k, then the high-precision
/// optimal online value at k with p = e^{-2k}, eps = e^{-(2k)^2}.
GeneralHardnessReport hardness_general(int k = 4, int max_k = 20);

struct ActivationRow {
    double g_early = 0.0;
    double g_late = 0.0;
    double p_high = 0.0;
    double log_p_none = 0.0;
    double normalized_margin = 0.0;
};

struct ActivationHardnessReport {
    int k = 0;
    double p = 0.0;
    double log_inv_epsilon = 0.0;
    std::vector<ActivationRow> rows;
    double best_margin = 0.0;
    double min_case1_bad_order = 0.0;
    double p2k_log_rel_error = 0.0;
    double containment_diff = 0.0;
    bool arithmetic_ok = false;
    bool certified = false;
};

/// Same two-type instance with p = 1/ln(1/eps) and k = ln(1/eps)/(4 ln ln(1/eps));
/// searches activation probabilities of the value-1 copies on [0, 2/k] and
/// (2/k, 1] over a (grid+1)^2 lattice.
ActivationHardnessReport hardness_activation(int k = 61, int grid = 20, const IntegrationConfig& cfg = {});

struct LemmaSlacks {
    double product = 0.0;
    double root_pair = 0.0;
    double root_n = 0.0;
    double reach = 0.0;
    double monotone = 0.0;
};

struct LemmaSuiteReport {
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<LemmaSlacks> per_trial;
    LemmaSlacks min_slack;
    double symmetric_gap = 0.0;
    double t0_max_abs = 0.0;
    bool pass = false;
};

/// Randomized laws and schedules; thresholds sit on merged breakpoints with
/// accept_prob in {0, 1}, where derived laws are exact.
LemmaSuiteReport lemma_suite(std::uint64_t seed, int trials);

/// Ten small instances (n <= 4) mixing discrete and piecewise laws.
std::vector<std::vector<Distribution>> regression_set();

} // namespace prophet
