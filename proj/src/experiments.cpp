#include "prophet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace prophet {

namespace {

namespace mp = boost::multiprecision;

double target_value(const OptLaw& opt, double epsilon) { return (1.0 - epsilon) * opt.expected_value(); }

McConfig mc_for(const Instance& inst, McConfig cfg) {
    if (cfg.value_cap < inst.support_max()) cfg.value_cap = inst.support_max();
    return cfg;
}

EvalResult evaluate(const Instance& inst, const Policy& policy, Evaluator evaluator, const ExperimentOptions& opts) {
    if (evaluator == Evaluator::Exact) {
        if (const auto* s = std::get_if<ThresholdSchedule>(&policy)) {
            return expected_value_threshold(inst, *s, opts.integration);
        }
        if (const auto* a = std::get_if<ActivationPolicy>(&policy)) {
            return expected_value_activation(inst, *a, opts.integration);
        }
    }
    return estimate_expected_value(inst, policy, mc_for(inst, opts.mc));
}

// Two-type surrogate instance: deterministic 1 and {0 w.p. p, 2 w.p. 1 - p}.
Instance two_type_instance(double p, int k) {
    return make_instance({Distribution::point_mass(1.0), Distribution::discrete({{0.0, p}, {2.0, 1.0 - p}})}, k);
}

// (E[ALG] - (1 - eps) E[OPT]) / sqrt(eps) for the two-type instance.
double normalized_margin(double p_high, double log_p_none, double p, double log_inv_eps) {
    const double sqrt_eps = std::exp(-0.5 * log_inv_eps);
    const double eps = std::exp(-log_inv_eps);
    const double bar = (1.0 - p) * (1.0 - eps) - sqrt_eps;
    return p_high - std::exp(log_p_none + 0.5 * log_inv_eps) - bar;
}

Distribution random_law(Rng& rng) {
    static const double grid[] = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
    if (uniform01(rng) < 0.5) {
        const int m = 1 + static_cast<int>(uniform01(rng) * 3.0);
        std::vector<std::pair<double, double>> atoms;
        double total = 0.0;
        for (int j = 0; j < m; ++j) {
            const double w = 0.05 + uniform01(rng);
            atoms.emplace_back(grid[static_cast<int>(uniform01(rng) * 6.0)], w);
            total += w;
        }
        for (auto& a : atoms) a.second /= total;
        return Distribution::discrete(atoms);
    }
    const int m = 2 + static_cast<int>(uniform01(rng) * 3.0);
    std::vector<double> xs;
    for (int j = 0; j < m; ++j) xs.push_back(3.0 * uniform01(rng));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) xs = {0.0, 3.0};
    std::vector<double> fs;
    for (std::size_t j = 0; j < xs.size(); ++j) fs.push_back(uniform01(rng));
    std::sort(fs.begin(), fs.end());
    // An atom at the left end with probability 1/2.
    if (uniform01(rng) < 0.5) fs.front() = 0.0;
    fs.back() = 1.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t j = 0; j < xs.size(); ++j) pts.emplace_back(xs[j], fs[j]);
    return Distribution::piecewise(pts);
}

ThresholdSchedule random_schedule(Rng& rng, const std::vector<double>& grid) {
    const int m = 1 + static_cast<int>(uniform01(rng) * 4.0);
    std::vector<double> cuts;
    for (int r = 1; r < m; ++r) cuts.push_back(uniform01(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> bps{0.0};
    for (double c : cuts) {
        if (c > bps.back()) bps.push_back(c);
    }
    bps.push_back(1.0);
    std::vector<RandomizedThreshold> ths;
    for (std::size_t r = 0; r + 1 < bps.size(); ++r) {
        const double tau = grid[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(grid.size()))];
        ths.push_back({tau, uniform01(rng) < 0.5 ? 0.0 : 1.0});
    }
    return ThresholdSchedule(std::move(bps), std::move(ths));
}

double p_multi(const ThresholdSchedule& s, std::vector<std::pair<Distribution, int>> ms, double t) {
    return p_tau_multi(StopProbQuery{s, std::move(ms), t});
}

} // namespace

const char* to_string(AlgorithmClass c) noexcept {
    switch (c) {
    case AlgorithmClass::Single: return "single";
    case AlgorithmClass::Blind: return "blind";
    case AlgorithmClass::General: return "general";
    }
    return "?";
}

const char* to_string(Evaluator e) noexcept { return e == Evaluator::Exact ? "exact" : "mc"; }

AlgorithmClass parse_algorithm_class(const std::string& s) {
    if (s == "single") return AlgorithmClass::Single;
    if (s == "blind") return AlgorithmClass::Blind;
    if (s == "general" || s == "adaptive") return AlgorithmClass::General;
    throw Error(ErrorKind::Config, "unknown algorithm class '" + s + "' (single|blind|general)");
}

Evaluator parse_evaluator(const std::string& s) {
    if (s == "exact") return Evaluator::Exact;
    if (s == "mc" || s == "monte-carlo") return Evaluator::MonteCarlo;
    throw Error(ErrorKind::Config, "unknown evaluator '" + s + "' (exact|mc)");
}

int paper_bound_k(AlgorithmClass cls, double epsilon) {
    const int ell = ell_for_epsilon(epsilon);
    const double L = -std::log(epsilon);
    // The 1e-9 guard keeps values that are integers up to rounding (eps = 1/e) exact.
    switch (cls) {
    case AlgorithmClass::Single: return std::max(1, static_cast<int>(std::ceil(2.0 * L - 1e-9)));
    case AlgorithmClass::Blind: {
        const double lnL = std::log(L);
        if (!(lnL > 0.0)) return 2;
        return std::max(1, static_cast<int>(std::ceil(2.0 * L / lnL - 1e-9)));
    }
    case AlgorithmClass::General: return 8 * ell;
    }
    return 0;
}

KSearchResult search_k(const std::vector<Distribution>& base, double epsilon, AlgorithmClass cls,
                       Evaluator evaluator, int cap, const ExperimentOptions& opts) {
    if (cap < 1) throw Error(ErrorKind::InvalidParameter, "k cap must be >= 1");
    KSearchResult res;
    res.epsilon = epsilon;
    res.cls = cls;
    res.evaluator = evaluator;
    res.cap = cap;
    res.paper_bound_k = paper_bound_k(cls, epsilon);
    const OptLaw opt(base);
    res.expected_opt = opt.expected_value();
    const double target = target_value(opt, epsilon);

    for (int k = 1; k <= cap && !res.found_k; ++k) {
        const Instance inst = make_instance(base, k);
        std::vector<std::pair<std::string, Policy>> candidates;
        if (cls == AlgorithmClass::General) {
            candidates.emplace_back("adaptive", make_adaptive(opt, inst, epsilon));
        }
        if (cls != AlgorithmClass::Blind) candidates.emplace_back("single", make_single_threshold(opt));
        if (cls != AlgorithmClass::Single) {
            candidates.emplace_back("blind", make_blind_schedule(opt, k, opts.grid_resolution));
        }
        for (const auto& [name, policy] : candidates) {
            KSearchRow row;
            row.k = k;
            row.candidate = name;
            row.result = evaluate(inst, policy, evaluator, opts);
            row.target = target;
            row.pass = row.result.estimate + row.result.half_width >= target;
            res.rows.push_back(row);
            if (row.pass && !res.found_k) res.found_k = k;
        }
    }
    return res;
}

std::vector<double> dominance_grid(const OptLaw& opt, const std::vector<double>& boundary_quantiles) {
    std::vector<double> xs{0.0};
    for (int i = 1; i <= 99; ++i) xs.push_back(opt.value_quantile(i / 100.0));
    for (double q : boundary_quantiles) {
        if (q > 0.0 && q < 1.0) xs.push_back(opt.value_quantile(q));
    }
    for (const auto& d : opt.base()) {
        auto b = d.breakpoints();
        xs.insert(xs.end(), b.begin(), b.end());
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<double> case_boundaries(const Policy& policy, int k) {
    std::vector<double> qs{0.5};
    if (k >= 2) {
        qs.push_back(1.0 / k);
        qs.push_back(1.0 - 1.0 / k);
    }
    if (const auto* a = std::get_if<AdaptiveTwoThreshold>(&policy)) {
        qs.push_back(0.75);
        qs.push_back(std::exp(-static_cast<double>(a->ell)));
    }
    return qs;
}

DominanceReport dominance_check(const Instance& inst, const Policy& policy, double epsilon, Evaluator evaluator,
                                const ExperimentOptions& opts) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw Error(ErrorKind::InvalidParameter, "epsilon must lie in [0,1)");
    const OptLaw opt = opt_law(inst);
    const std::vector<double> xs = dominance_grid(opt, case_boundaries(policy, inst.copies));

    const bool exact = evaluator == Evaluator::Exact && !std::holds_alternative<AdaptiveTwoThreshold>(policy);
    DominanceReport rep;
    rep.epsilon = epsilon;
    rep.method = exact ? Method::Exact : Method::MonteCarlo;
    rep.rows.resize(xs.size());

    std::vector<double> simulated;
    if (!exact) simulated = simulate_selected_values(inst, policy, mc_for(inst, opts.mc));

    const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 1) if (exact)
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        const double x = xs[static_cast<std::size_t>(idx)];
        DominanceRow& row = rep.rows[static_cast<std::size_t>(idx)];
        row.x = x;
        row.quantile = opt.cdf(x);
        IntegrationConfig serial = opts.integration;
        serial.parallel = false;
        if (!exact) {
            const EvalResult r = exceedance_from_values(simulated, x, opts.mc);
            row.p_alg = r.estimate;
            row.half_width = r.half_width;
        } else if (const auto* s = std::get_if<ThresholdSchedule>(&policy)) {
            row.p_alg = exceedance_threshold(inst, *s, x, serial);
            row.half_width = serial.abs_tol;
        } else {
            row.p_alg = exceedance_activation(inst, std::get<ActivationPolicy>(policy), x, serial);
            row.half_width = serial.abs_tol;
        }
        row.p_opt_scaled = (1.0 - epsilon) * (1.0 - opt.cdf(x));
        row.margin = row.p_alg - row.p_opt_scaled;
    }
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& r : rep.rows) {
        rep.min_margin = std::min(rep.min_margin, r.margin);
        rep.max_half_width = std::max(rep.max_half_width, r.half_width);
    }
    return rep;
}

double solve_log_inv_epsilon_for_k(int k) {
    if (k < 3) throw Error(ErrorKind::InvalidParameter, "k = L / (4 ln L) needs k >= 3 for a root above e");
    // Newton on f(L) = L - 4k ln L from the right of the larger root; f is convex.
    const double c = 4.0 * k;
    double L = 2.0 * c * std::log(c);
    for (int it = 0; it < 200; ++it) {
        const double step = (L - c * std::log(L)) / (1.0 - c / L);
        L -= step;
        if (std::abs(step) <= 1e-15 * L) break;
    }
    return L;
}

TimeHardnessReport hardness_time_based(int k, std::optional<double> p_opt, std::optional<double> log_inv_epsilon,
                                       int grid_points, const IntegrationConfig& cfg) {
    if (k < 1 || grid_points < 1) throw Error(ErrorKind::InvalidParameter, "hardness needs k >= 1 and a grid");
    TimeHardnessReport rep;
    rep.k = k;
    rep.p = p_opt.value_or(1.0 / k);
    rep.log_inv_epsilon = log_inv_epsilon ? *log_inv_epsilon : solve_log_inv_epsilon_for_k(k);
    const Instance inst = two_type_instance(rep.p, k);

    std::vector<double> ts;
    for (int i = 0; i <= grid_points; ++i) ts.push_back(static_cast<double>(i) / grid_points);
    const double boundary = 1.0 / (2.0 * k);
    ts.push_back(boundary);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    const RandomizedThreshold high{1.0, 0.0};
    const RandomizedThreshold low{0.0, 0.0};
    rep.rows.resize(ts.size());
    const auto n = static_cast<std::ptrdiff_t>(ts.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        const double t = ts[static_cast<std::size_t>(idx)];
        const ThresholdSchedule s = t <= 0.0   ? ThresholdSchedule::constant(low)
                                    : t >= 1.0 ? ThresholdSchedule::constant(high)
                                               : ThresholdSchedule({0.0, t, 1.0}, {high, low});
        IntegrationConfig serial = cfg;
        serial.parallel = false;
        SwitchRow& row = rep.rows[static_cast<std::size_t>(idx)];
        row.t = t;
        row.p_high = exceedance_threshold(inst, s, 1.5, serial);
        row.log_p_none = log_no_stop_threshold(inst, s);
        row.normalized_margin = normalized_margin(row.p_high, row.log_p_none, rep.p, rep.log_inv_epsilon);
    }
    rep.best_margin = -std::numeric_limits<double>::infinity();
    for (const auto& r : rep.rows) {
        if (r.normalized_margin > rep.best_margin) {
            rep.best_margin = r.normalized_margin;
            rep.best_t = r.t;
        }
    }

    // t = 0 accepts every nonzero value: the first nonzero arrival is uniform
    // among the k deterministic rewards and the X ~ Bin(k, 1 - p) nonzero ones.
    double closed = 0.0;
    for (int x = 1; x <= k; ++x) {
        const double log_binom = std::lgamma(k + 1.0) - std::lgamma(x + 1.0) - std::lgamma(k - x + 1.0);
        const double log_pmf = log_binom + x * std::log1p(-rep.p) + (k - x) * std::log(rep.p);
        closed += std::exp(log_pmf) * x / static_cast<double>(k + x);
    }
    rep.closed_form_p_high_t0 = closed;
    rep.oracle_p_high_t0 = rep.rows.front().p_high;

    rep.case1_bad_order_at_boundary = std::pow(1.0 - boundary, 2.0 * k);
    rep.case1_min_over_k = 1.0;
    for (int kk = 1; kk <= 100; ++kk) {
        rep.case1_min_over_k = std::min(rep.case1_min_over_k, std::pow(1.0 - 1.0 / (2.0 * kk), 2.0 * kk));
    }
    rep.case2_log_bound_at_boundary = k * std::log(rep.p) + k * std::log(boundary);
    rep.arithmetic_ok = rep.case1_min_over_k >= 0.25 && rep.case1_bad_order_at_boundary >= 0.25;
    rep.certified = rep.arithmetic_ok && rep.best_margin < 0.0 &&
                    std::abs(rep.closed_form_p_high_t0 - rep.oracle_p_high_t0) <= 1e-12;
    return rep;
}

GeneralHardnessReport hardness_general(int k, int max_k) {
    if (k < 1 || max_k < 1) throw Error(ErrorKind::InvalidParameter, "hardness needs k >= 1");
    GeneralHardnessReport rep;
    mp::cpp_int fact = 1;
    std::vector<mp::cpp_int> facts{1};
    for (int i = 1; i <= 2 * max_k; ++i) {
        fact *= i;
        facts.push_back(fact);
    }
    for (int kk = 1; kk <= max_k; ++kk) {
        const mp::cpp_int num = facts[kk] * facts[kk];
        const mp::cpp_int& den = facts[2 * kk];
        const mp::cpp_rational ratio(num, den);
        BadOrderRow row;
        row.k = kk;
        row.exact = mp::numerator(ratio).str() + "/" + mp::denominator(ratio).str();
        row.value = ratio.convert_to<double>();
        row.four_pow_neg_k = std::ldexp(1.0, -2 * kk);
        // (k!)^2 / (2k)! >= 4^-k  <=>  (k!)^2 4^k >= (2k)!
        row.pass = num * (mp::cpp_int(1) << (2 * kk)) >= den;
        rep.bad_order.push_back(row);
    }

    rep.k = k;
    rep.log_inv_epsilon = 4.0 * k * k;
    rep.p = std::exp(-2.0 * k);
    const HighPrecision L(4 * k * k);
    const HighPrecision eps = mp::exp(-L);
    const HighPrecision delta = mp::exp(-L / 2);
    const HighPrecision p = mp::exp(HighPrecision(-2 * k));
    const HighPrecision one(1);
    AtomTable<HighPrecision> atoms{{{one, one}}, {{HighPrecision(0), p}, {one + delta, one - p}}};
    const HighPrecision value = optimal_online_value(atoms, k);
    const HighPrecision target = (one - eps) * (one + delta - p * delta);
    const HighPrecision ceiling = one + delta - delta / mp::pow(HighPrecision(4), k);

    rep.dp_normalized = ((value - one) / delta).convert_to<double>();
    rep.target_normalized = ((target - one) / delta).convert_to<double>();
    rep.ceiling_normalized = ((ceiling - one) / delta).convert_to<double>();
    rep.dp_value = value.str(40, std::ios_base::scientific);
    rep.target_value = target.str(40, std::ios_base::scientific);
    rep.side_condition = 3 * p < one / mp::pow(HighPrecision(4), k);
    rep.below_target = value < target;
    rep.below_ceiling = value <= ceiling;
    bool all_rows = true;
    for (const auto& r : rep.bad_order) all_rows = all_rows && r.pass;
    rep.certified = all_rows && rep.side_condition && rep.below_target && rep.below_ceiling;
    return rep;
}

ActivationHardnessReport hardness_activation(int k, int grid, const IntegrationConfig& cfg) {
    if (k < 8 || grid < 1) throw Error(ErrorKind::InvalidParameter, "activation hardness needs k >= 8 and a grid");
    ActivationHardnessReport rep;
    rep.k = k;
    rep.log_inv_epsilon = solve_log_inv_epsilon_for_k(k);
    rep.p = 1.0 / rep.log_inv_epsilon;
    const Instance inst = two_type_instance(rep.p, k);
    const double split = 2.0 / k;
    const std::vector<double> bps{0.0, split, 1.0};
    const std::vector<ValueBuckets> buckets{ActivationPolicy::default_buckets(inst.base[0]),
                                            ActivationPolicy::default_buckets(inst.base[1])};
    // Bucket 1 is the value-1 atom of the deterministic law, bucket 3 the value-2 atom of the other.
    auto policy = [&](double g_early, double g_late) {
        ActivationPolicy act(bps, buckets, k);
        act.set_all_copies(0, 0, 1, g_early);
        act.set_all_copies(1, 0, 1, g_late);
        act.set_all_copies(0, 1, 3, 1.0);
        act.set_all_copies(1, 1, 3, 1.0);
        return act;
    };

    const std::size_t side = static_cast<std::size_t>(grid) + 1;
    rep.rows.resize(side * side);
    const auto n = static_cast<std::ptrdiff_t>(rep.rows.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        ActivationRow& row = rep.rows[u];
        row.g_early = static_cast<double>(u / side) / grid;
        row.g_late = static_cast<double>(u % side) / grid;
        const ActivationPolicy act = policy(row.g_early, row.g_late);
        IntegrationConfig serial = cfg;
        serial.parallel = false;
        row.p_high = exceedance_activation(inst, act, 1.5, serial);
        row.log_p_none = log_no_stop_activation(inst, act);
        row.normalized_margin = normalized_margin(row.p_high, row.log_p_none, rep.p, rep.log_inv_epsilon);
    }
    rep.best_margin = -std::numeric_limits<double>::infinity();
    for (const auto& r : rep.rows) rep.best_margin = std::max(rep.best_margin, r.normalized_margin);

    rep.min_case1_bad_order = 1.0;
    for (int kk = 8; kk <= 200; ++kk) {
        rep.min_case1_bad_order = std::min(rep.min_case1_bad_order, std::pow(1.0 - 2.0 / kk, kk));
    }
    // p^{2k} = sqrt(eps)  <=>  2k ln p = -L/2.
    const double half_L = 0.5 * rep.log_inv_epsilon;
    rep.p2k_log_rel_error = std::abs(2.0 * k * std::log(rep.p) + half_L) / half_L;

    const ActivationPolicy all_on = policy(1.0, 1.0);
    const ThresholdSchedule at_one = ThresholdSchedule::constant({1.0, 1.0});
    rep.containment_diff = std::abs(expected_value_activation(inst, all_on, cfg).estimate -
                                    expected_value_threshold(inst, at_one, cfg).estimate);

    const bool case1_side = 3.0 * rep.p < 1.0 / (10.0 * k);
    const bool case2_chain = 1.0 / k >= rep.p;
    rep.arithmetic_ok = rep.min_case1_bad_order >= 0.1 && rep.p2k_log_rel_error <= 1e-12 && case1_side && case2_chain;
    rep.certified = rep.arithmetic_ok && rep.best_margin < 0.0 && rep.containment_diff <= 1e-9;
    return rep;
}

LemmaSuiteReport lemma_suite(std::uint64_t seed, int trials) {
    if (trials < 1) throw Error(ErrorKind::InvalidParameter, "lemma suite needs trials >= 1");
    LemmaSuiteReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.per_trial.resize(static_cast<std::size_t>(trials));
    std::vector<double> sym_gap(static_cast<std::size_t>(trials), 0.0);
    std::vector<double> t0(static_cast<std::size_t>(trials), 0.0);

#pragma omp parallel for schedule(dynamic, 1)
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = make_substream(seed, static_cast<std::uint64_t>(trial));
        const Distribution f1 = random_law(rng);
        const Distribution f2 = random_law(rng);
        const Distribution f3 = random_law(rng);
        const std::vector<Distribution> pair{f1, f2};
        const std::vector<Distribution> triple{f1, f2, f3};
        const std::vector<double> grid = merged_breakpoints(triple);
        const ThresholdSchedule s = random_schedule(rng, grid);
        const double t = uniform01(rng) < 0.1 ? 1.0 : uniform01(rng);

        const Distribution prod = product_max(pair);
        const Distribution root2 = nth_root(prod, 2);
        const Distribution root3 = nth_root(product_max(triple), 3);
        const double both = p_multi(s, {{f1, 1}, {f2, 1}}, t);

        LemmaSlacks& sl = rep.per_trial[static_cast<std::size_t>(trial)];
        sl.product = both - p_multi(s, {{prod, 1}}, t);
        sl.root_pair = p_multi(s, {{root2, 2}}, t) - both;
        sl.root_n = p_multi(s, {{root3, 3}}, t) - p_multi(s, {{f1, 1}, {f2, 1}, {f3, 1}}, t);
        sl.reach = reach_probability({s, {{f2, 1}}, t}) - reach_probability({s, {{f1, 1}, {f2, 1}}, t});

        const int copies = 1 + static_cast<int>(uniform01(rng) * 3.0);
        const Instance inst = make_instance(pair, copies);
        IntegrationConfig serial;
        serial.parallel = false;
        sl.monotone = expected_value_threshold(inst, s.sorted_nonincreasing(), serial).estimate -
                      expected_value_threshold(inst, s, serial).estimate;

        const Distribution same_root = nth_root(product_max(std::vector<Distribution>{f1, f1}), 2);
        sym_gap[static_cast<std::size_t>(trial)] =
            std::abs(p_multi(s, {{same_root, 2}}, t) - p_multi(s, {{f1, 1}, {f1, 1}}, t));
        t0[static_cast<std::size_t>(trial)] =
            std::max({std::abs(p_multi(s, {{f1, 1}, {f2, 1}}, 0.0)), std::abs(p_multi(s, {{prod, 1}}, 0.0)),
                      std::abs(p_multi(s, {{root2, 2}}, 0.0)), std::abs(p_multi(s, {{root3, 3}}, 0.0))});
    }

    const double inf = std::numeric_limits<double>::infinity();
    rep.min_slack = {inf, inf, inf, inf, inf};
    for (const auto& sl : rep.per_trial) {
        rep.min_slack.product = std::min(rep.min_slack.product, sl.product);
        rep.min_slack.root_pair = std::min(rep.min_slack.root_pair, sl.root_pair);
        rep.min_slack.root_n = std::min(rep.min_slack.root_n, sl.root_n);
        rep.min_slack.reach = std::min(rep.min_slack.reach, sl.reach);
        rep.min_slack.monotone = std::min(rep.min_slack.monotone, sl.monotone);
    }
    rep.symmetric_gap = *std::max_element(sym_gap.begin(), sym_gap.end());
    rep.t0_max_abs = *std::max_element(t0.begin(), t0.end());
    const double tol = -1e-9;
    rep.pass = rep.min_slack.product >= tol && rep.min_slack.root_pair >= tol && rep.min_slack.root_n >= tol &&
               rep.min_slack.reach >= tol && rep.min_slack.monotone >= tol && rep.symmetric_gap <= 1e-12 &&
               rep.t0_max_abs == 0.0;
    return rep;
}

std::vector<std::vector<Distribution>> regression_set() {
    using D = Distribution;
    return {
        {D::discrete({{0.0, 0.5}, {1.0, 0.5}}), D::discrete({{0.0, 0.5}, {1.0, 0.5}})},
        {D::piecewise({{0.0, 0.0}, {1.0, 1.0}})},
        {D::discrete({{1.0, 0.5}, {2.0, 0.3}, {4.0, 0.2}}), D::piecewise({{0.0, 0.0}, {2.0, 1.0}})},
        {D::discrete({{0.0, 0.5}, {1.0, 0.5}}), D::point_mass(0.5), D::discrete({{0.0, 0.8}, {3.0, 0.2}})},
        {D::piecewise({{0.0, 0.3}, {1.0, 0.6}, {2.0, 1.0}}), D::point_mass(1.5)},
        {D::discrete({{0.0, 0.6}, {1.0, 0.4}}), D::discrete({{0.5, 0.5}, {2.0, 0.5}}),
         D::discrete({{0.2, 0.9}, {4.0, 0.1}}), D::discrete({{1.0, 0.7}, {1.5, 0.3}})},
        {D::point_mass(1.0), D::discrete({{0.0, 0.2}, {1.2, 0.8}})},
        {D::piecewise({{0.0, 0.0}, {0.5, 0.1}, {1.0, 0.5}, {2.0, 1.0}}), D::piecewise({{0.0, 0.0}, {3.0, 1.0}})},
        {D::discrete({{0.0, 0.9}, {10.0, 0.1}}), D::point_mass(1.0)},
        {D::piecewise({{0.0, 0.0}, {1.0, 1.0}}), D::discrete({{0.2, 0.5}, {0.9, 0.5}}),
         D::piecewise({{0.0, 0.0}, {0.5, 0.8}, {1.5, 1.0}}), D::discrete({{0.0, 0.99}, {5.0, 0.01}})},
    };
}

} // namespace prophet
