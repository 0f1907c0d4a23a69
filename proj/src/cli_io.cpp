#include "prophet/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <boost/version.hpp>

#include "CLI11.hpp"
#include "json.hpp"
#include "prophet/experiments.hpp"

namespace prophet {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        config_error(source + ": malformed JSON at line " + std::to_string(line) + ": " + e.what());
    }
}

double number_at(const json& j, const std::string& field, const std::string& source) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == s.size() && used > 0) return v;
    }
    config_error(source + ": field " + field + " must be a number or decimal string");
}

std::vector<std::pair<double, double>> pairs_at(const json& j, const std::string& field, const std::string& source) {
    if (!j.is_array() || j.empty()) config_error(source + ": field " + field + " must be a nonempty array of pairs");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) config_error(source + ": field " + f + " must be a pair");
        out.emplace_back(number_at(j[i][0], f + "[0]", source), number_at(j[i][1], f + "[1]", source));
    }
    return out;
}

Distribution distribution_from(const json& j, const std::string& field, const std::string& source) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        config_error(source + ": field " + field + ".type must be \"discrete\" or \"piecewise\"");
    }
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "discrete") {
            if (!j.contains("atoms")) config_error(source + ": field " + field + ".atoms is missing");
            return Distribution::discrete(pairs_at(j["atoms"], field + ".atoms", source));
        }
        if (type == "piecewise") {
            if (!j.contains("points")) config_error(source + ": field " + field + ".points is missing");
            return Distribution::piecewise(pairs_at(j["points"], field + ".points", source));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        config_error(source + ": field " + field + ": " + e.what());
    }
    config_error(source + ": field " + field + ".type must be \"discrete\" or \"piecewise\", got \"" + type + "\"");
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error(std::string("cannot open ") + what + " file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) config_error("cannot write '" + path.string() + "'");
    out << content;
}

ojson num(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

class Csv {
public:
    explicit Csv(std::initializer_list<const char*> header) {
        bool first = true;
        for (const char* h : header) {
            if (!first) out_ << ',';
            out_ << h;
            first = false;
        }
        out_ << '\n';
    }

    template <class... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "true" : "false"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::ostringstream out_;
};

struct Outputs {
    std::string csv;
    ojson summary = ojson::object();
    bool check_ok = true;
    std::vector<std::pair<std::string, std::string>> extra_files;
};

McConfig mc_config(const RunConfig& cfg) {
    McConfig mc;
    mc.replications = cfg.reps;
    mc.master_seed = cfg.seed;
    if (cfg.ci == "normal") {
        mc.ci_method = CiMethod::Normal;
    } else if (cfg.ci == "hoeffding") {
        mc.ci_method = CiMethod::Hoeffding;
    } else {
        config_error("unknown --ci '" + cfg.ci + "' (normal|hoeffding)");
    }
    return mc;
}

ExperimentOptions experiment_options(const RunConfig& cfg) {
    ExperimentOptions opts;
    opts.grid_resolution = cfg.grid;
    opts.mc = mc_config(cfg);
    return opts;
}

double require_epsilon(const RunConfig& cfg) {
    if (!cfg.epsilon) config_error(cfg.command + " needs --epsilon");
    ell_for_epsilon(*cfg.epsilon);
    return *cfg.epsilon;
}

Instance instance_for(const RunConfig& cfg) {
    if (cfg.instance_path.empty()) config_error(cfg.command + " needs --instance");
    Instance inst = load_instance(cfg.instance_path);
    if (cfg.k) inst = make_instance(inst.base, *cfg.k);
    return inst;
}

std::string policy_name(const RunConfig& cfg) {
    std::string name = cfg.policy.empty() ? cfg.algorithm_class : cfg.policy;
    if (name == "general") name = "adaptive";
    return name;
}

Policy build_policy(const RunConfig& cfg, const std::string& name, const Instance& inst, const OptLaw& opt) {
    if (name == "single") return make_single_threshold(opt);
    if (name == "blind") return make_blind_schedule(opt, inst.copies, cfg.grid);
    if (name == "adaptive") return make_adaptive(opt, inst, require_epsilon(cfg));
    if (name == "activation") {
        if (cfg.policy_path.empty()) config_error("activation policy needs --policy-file");
        return parse_activation_policy(read_file(cfg.policy_path, "policy"), inst, cfg.policy_path);
    }
    config_error("unknown policy '" + name + "' (single|blind|adaptive|activation)");
}

std::optional<AlgorithmClass> class_of_policy(const std::string& name) {
    if (name == "single") return AlgorithmClass::Single;
    if (name == "blind") return AlgorithmClass::Blind;
    if (name == "adaptive") return AlgorithmClass::General;
    return std::nullopt;
}

Outputs run_eval(const RunConfig& cfg) {
    const Instance inst = instance_for(cfg);
    const OptLaw opt = opt_law(inst);
    const std::string name = policy_name(cfg);
    const Policy policy = build_policy(cfg, name, inst, opt);
    const Evaluator ev = parse_evaluator(cfg.evaluator);
    const bool exact = ev == Evaluator::Exact && !std::holds_alternative<AdaptiveTwoThreshold>(policy);

    McConfig mc = mc_config(cfg);
    mc.value_cap = std::max(mc.value_cap, inst.support_max());
    EvalResult value;
    if (exact) {
        value = std::holds_alternative<ThresholdSchedule>(policy)
                    ? expected_value_threshold(inst, std::get<ThresholdSchedule>(policy))
                    : expected_value_activation(inst, std::get<ActivationPolicy>(policy));
    } else {
        value = estimate_expected_value(inst, policy, mc);
    }

    Outputs o;
    Csv csv{"metric", "estimate", "half_width", "method", "replications", "seed"};
    csv.row("expected_value", value.estimate, value.half_width, to_string(value.method), value.replications,
            value.seed);
    o.summary["command"] = "eval";
    o.summary["policy"] = name;
    o.summary["k"] = inst.copies;
    o.summary["expected_opt"] = num(opt.expected_value());
    o.summary["estimate"] = num(value.estimate);
    o.summary["half_width"] = num(value.half_width);
    o.summary["half_widths"] = ojson::array({num(value.half_width)});
    o.summary["method"] = to_string(value.method);
    o.summary["ratio"] = num(value.estimate / opt.expected_value());
    if (!exact) {
        const EvalResult none = estimate_no_stop(inst, policy, mc);
        csv.row("no_stop", none.estimate, none.half_width, to_string(none.method), none.replications, none.seed);
        o.summary["no_stop"] = num(none.estimate);
        o.summary["no_stop_half_width"] = num(none.half_width);
        o.summary["half_widths"].push_back(num(none.half_width));
    }
    if (cfg.epsilon) {
        const double eps = require_epsilon(cfg);
        const double target = (1.0 - eps) * opt.expected_value();
        o.summary["epsilon"] = eps;
        o.summary["target"] = num(target);
        if (auto cls = class_of_policy(name)) o.summary["paper_bound_k"] = paper_bound_k(*cls, eps);
        o.check_ok = value.estimate + value.half_width >= target;
        o.summary["pass"] = o.check_ok;
    }
    o.csv = csv.str();
    return o;
}

Outputs run_search_k(const RunConfig& cfg) {
    const double eps = require_epsilon(cfg);
    const Instance inst = instance_for(cfg);
    const AlgorithmClass cls = parse_algorithm_class(cfg.algorithm_class);
    const Evaluator ev = parse_evaluator(cfg.evaluator);
    const KSearchResult res = search_k(inst.base, eps, cls, ev, cfg.cap, experiment_options(cfg));

    Outputs o;
    Csv csv{"k", "candidate", "estimate", "half_width", "method", "target", "pass"};
    ojson widths = ojson::array();
    for (const auto& r : res.rows) {
        csv.row(r.k, r.candidate, r.result.estimate, r.result.half_width, to_string(r.result.method), r.target,
                r.pass);
        widths.push_back(num(r.result.half_width));
    }
    o.csv = csv.str();
    o.summary["command"] = "search-k";
    o.summary["epsilon"] = eps;
    o.summary["class"] = to_string(cls);
    o.summary["evaluator"] = to_string(ev);
    o.summary["expected_opt"] = num(res.expected_opt);
    o.summary["found_k"] = res.found_k ? ojson(*res.found_k) : ojson(nullptr);
    o.summary["paper_bound_k"] = res.paper_bound_k;
    o.summary["cap"] = res.cap;
    o.summary["half_widths"] = widths;
    o.check_ok = res.found_k.has_value() && *res.found_k <= res.paper_bound_k;
    o.summary["pass"] = o.check_ok;
    return o;
}

Outputs run_dominance(const RunConfig& cfg) {
    const double eps = require_epsilon(cfg);
    const Instance inst = instance_for(cfg);
    const OptLaw opt = opt_law(inst);
    const std::string name = policy_name(cfg);
    const Policy policy = build_policy(cfg, name, inst, opt);
    const DominanceReport rep = dominance_check(inst, policy, eps, parse_evaluator(cfg.evaluator),
                                                experiment_options(cfg));
    Outputs o;
    Csv csv{"quantile", "x", "p_alg", "p_opt_scaled", "margin"};
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : rep.rows) {
        csv.row(r.quantile, r.x, r.p_alg, r.p_opt_scaled, r.margin);
        const double slack = rep.method == Method::MonteCarlo ? r.margin + r.half_width : r.margin;
        worst = std::min(worst, slack);
    }
    o.csv = csv.str();
    o.check_ok = worst >= -cfg.tolerance;
    o.summary["command"] = "dominance";
    o.summary["policy"] = name;
    o.summary["k"] = inst.copies;
    o.summary["epsilon"] = eps;
    o.summary["expected_opt"] = num(opt.expected_value());
    if (auto cls = class_of_policy(name)) o.summary["paper_bound_k"] = paper_bound_k(*cls, eps);
    o.summary["method"] = to_string(rep.method);
    o.summary["grid_points"] = rep.rows.size();
    o.summary["min_margin"] = num(rep.min_margin);
    o.summary["half_widths"] = ojson::array({num(rep.max_half_width)});
    o.summary["tolerance"] = cfg.tolerance;
    o.summary["pass"] = o.check_ok;
    return o;
}

std::string time_csv(const TimeHardnessReport& r) {
    Csv csv{"t", "p_high", "log_p_none", "normalized_margin"};
    for (const auto& row : r.rows) csv.row(row.t, row.p_high, row.log_p_none, row.normalized_margin);
    return csv.str();
}

std::string general_csv(const GeneralHardnessReport& r) {
    Csv csv{"k", "bad_order_exact", "bad_order", "four_pow_neg_k", "pass"};
    for (const auto& row : r.bad_order) csv.row(row.k, row.exact, row.value, row.four_pow_neg_k, row.pass);
    return csv.str();
}

std::string activation_csv(const ActivationHardnessReport& r) {
    Csv csv{"g_early", "g_late", "p_high", "log_p_none", "normalized_margin"};
    for (const auto& row : r.rows) csv.row(row.g_early, row.g_late, row.p_high, row.log_p_none, row.normalized_margin);
    return csv.str();
}

Outputs run_hardness(const RunConfig& cfg) {
    const std::string& s = cfg.suite;
    if (s != "all" && s != "time" && s != "general" && s != "activation") {
        config_error("unknown hardness suite '" + s + "' (time|general|activation|all)");
    }
    Outputs o;
    o.summary["command"] = "hardness";
    o.summary["method"] = "exact";
    o.summary["half_widths"] = ojson::array({IntegrationConfig{}.abs_tol});
    Csv overview{"suite", "k", "p", "log_inv_epsilon", "best_normalized_margin", "certified"};
    if (s == "all" || s == "time") {
        const TimeHardnessReport r = hardness_time_based(cfg.k.value_or(25));
        ojson j;
        j["k"] = r.k;
        j["p"] = num(r.p);
        j["log_inv_epsilon"] = num(r.log_inv_epsilon);
        j["expected_opt_normalized"] = "1 + sqrt(eps) (1 - p)";
        j["best_t"] = num(r.best_t);
        j["best_normalized_margin"] = num(r.best_margin);
        j["closed_form_p_high_t0"] = num(r.closed_form_p_high_t0);
        j["oracle_p_high_t0"] = num(r.oracle_p_high_t0);
        j["case1_bad_order_at_boundary"] = num(r.case1_bad_order_at_boundary);
        j["case1_min_over_k_le_100"] = num(r.case1_min_over_k);
        j["case2_log_bound_at_boundary"] = num(r.case2_log_bound_at_boundary);
        j["arithmetic_ok"] = r.arithmetic_ok;
        j["certified"] = r.certified;
        o.summary["time_based"] = j;
        o.check_ok = o.check_ok && r.certified;
        overview.row("time_based", r.k, r.p, r.log_inv_epsilon, r.best_margin, r.certified);
        if (s == "time") o.csv = time_csv(r);
        else o.extra_files.emplace_back("hardness_time_based.csv", time_csv(r));
    }
    if (s == "all" || s == "general") {
        const GeneralHardnessReport r = hardness_general(cfg.k.value_or(4));
        ojson j;
        j["k"] = r.k;
        j["p"] = num(r.p);
        j["log_inv_epsilon"] = num(r.log_inv_epsilon);
        j["dp_value"] = r.dp_value;
        j["target_value"] = r.target_value;
        j["dp_normalized"] = num(r.dp_normalized);
        j["target_normalized"] = num(r.target_normalized);
        j["ceiling_normalized"] = num(r.ceiling_normalized);
        j["side_condition"] = r.side_condition;
        j["below_target"] = r.below_target;
        j["below_ceiling"] = r.below_ceiling;
        j["certified"] = r.certified;
        o.summary["general"] = j;
        o.check_ok = o.check_ok && r.certified;
        overview.row("general", r.k, r.p, r.log_inv_epsilon, r.dp_normalized - r.target_normalized, r.certified);
        if (s == "general") o.csv = general_csv(r);
        else o.extra_files.emplace_back("hardness_general.csv", general_csv(r));
    }
    if (s == "all" || s == "activation") {
        const ActivationHardnessReport r = hardness_activation(cfg.k.value_or(61));
        ojson j;
        j["k"] = r.k;
        j["p"] = num(r.p);
        j["log_inv_epsilon"] = num(r.log_inv_epsilon);
        j["best_normalized_margin"] = num(r.best_margin);
        j["min_case1_bad_order"] = num(r.min_case1_bad_order);
        j["p2k_log_rel_error"] = num(r.p2k_log_rel_error);
        j["containment_diff"] = num(r.containment_diff);
        j["arithmetic_ok"] = r.arithmetic_ok;
        j["certified"] = r.certified;
        o.summary["activation"] = j;
        o.check_ok = o.check_ok && r.certified;
        overview.row("activation", r.k, r.p, r.log_inv_epsilon, r.best_margin, r.certified);
        if (s == "activation") o.csv = activation_csv(r);
        else o.extra_files.emplace_back("hardness_activation.csv", activation_csv(r));
    }
    if (s == "all") o.csv = overview.str();
    o.summary["pass"] = o.check_ok;
    return o;
}

Outputs run_lemmas(const RunConfig& cfg) {
    const LemmaSuiteReport r = lemma_suite(cfg.seed, cfg.trials);
    Outputs o;
    Csv csv{"trial", "product", "root_pair", "root_n", "reach", "monotone"};
    for (std::size_t i = 0; i < r.per_trial.size(); ++i) {
        const auto& s = r.per_trial[i];
        csv.row(static_cast<int>(i), s.product, s.root_pair, s.root_n, s.reach, s.monotone);
    }
    o.csv = csv.str();
    const double min_slack = std::min({r.min_slack.product, r.min_slack.root_pair, r.min_slack.root_n,
                                       r.min_slack.reach, r.min_slack.monotone});
    o.summary["command"] = "lemmas";
    o.summary["method"] = "exact";
    o.summary["trials"] = r.trials;
    o.summary["seed"] = r.seed;
    o.summary["min_slack"] = num(min_slack);
    o.summary["min_slack_product"] = num(r.min_slack.product);
    o.summary["min_slack_root_pair"] = num(r.min_slack.root_pair);
    o.summary["min_slack_root_n"] = num(r.min_slack.root_n);
    o.summary["min_slack_reach"] = num(r.min_slack.reach);
    o.summary["min_slack_monotone"] = num(r.min_slack.monotone);
    o.summary["symmetric_gap"] = num(r.symmetric_gap);
    o.summary["t0_max_abs"] = num(r.t0_max_abs);
    o.summary["half_widths"] = ojson::array({IntegrationConfig{}.abs_tol});
    o.check_ok = r.pass;
    o.summary["pass"] = r.pass;
    return o;
}

ojson manifest(const RunConfig& cfg, const std::vector<std::string>& files) {
    ojson m;
    m["tool"] = "prophet_lab";
    m["command"] = cfg.command;
    ojson c;
    c["instance"] = cfg.instance_path;
    c["policy"] = cfg.policy;
    c["policy_file"] = cfg.policy_path;
    c["epsilon"] = cfg.epsilon ? ojson(*cfg.epsilon) : ojson(nullptr);
    c["class"] = cfg.algorithm_class;
    c["k"] = cfg.k ? ojson(*cfg.k) : ojson(nullptr);
    c["evaluator"] = cfg.evaluator;
    c["reps"] = cfg.reps;
    c["seed"] = cfg.seed;
    c["ci"] = cfg.ci;
    c["grid"] = cfg.grid;
    c["cap"] = cfg.cap;
    c["trials"] = cfg.trials;
    c["tolerance"] = cfg.tolerance;
    c["suite"] = cfg.suite;
    m["config"] = c;
    m["seed"] = cfg.seed;
    ojson v;
    v["prophet_lab"] = kToolVersion;
    v["compiler"] = __VERSION__;
    v["cplusplus"] = static_cast<long>(__cplusplus);
#ifdef _OPENMP
    v["openmp"] = _OPENMP;
#endif
    v["boost"] = BOOST_LIB_VERSION;
    v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    m["versions"] = v;
    m["outputs"] = files;
    return m;
}

} // namespace

Distribution parse_distribution(const std::string& json_text, const std::string& field) {
    return distribution_from(parse_json(json_text, field), field, field);
}

Instance parse_instance(const std::string& json_text, const std::string& source) {
    const json j = parse_json(json_text, source);
    if (!j.is_object()) config_error(source + ": instance must be a JSON object");
    if (!j.contains("base") || !j["base"].is_array() || j["base"].empty()) {
        config_error(source + ": field base must be a nonempty array of distributions");
    }
    std::vector<Distribution> base;
    for (std::size_t i = 0; i < j["base"].size(); ++i) {
        base.push_back(distribution_from(j["base"][i], "base[" + std::to_string(i) + "]", source));
    }
    int copies = 1;
    if (j.contains("copies")) {
        if (!j["copies"].is_number_integer()) config_error(source + ": field copies must be an integer");
        copies = j["copies"].get<int>();
    }
    if (copies < 1) config_error(source + ": field copies must be >= 1");
    return make_instance(std::move(base), copies);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path, "instance"), path); }

ActivationPolicy parse_activation_policy(const std::string& json_text, const Instance& inst,
                                         const std::string& source) {
    const json j = parse_json(json_text, source);
    if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty()) {
        config_error(source + ": field pieces must be a nonempty array");
    }
    const json& pieces = j["pieces"];
    std::vector<double> bps;
    for (std::size_t r = 0; r < pieces.size(); ++r) {
        const std::string f = "pieces[" + std::to_string(r) + "]";
        if (!pieces[r].contains("t0") || !pieces[r].contains("t1")) config_error(source + ": field " + f + " needs t0 and t1");
        const double t0 = number_at(pieces[r]["t0"], f + ".t0", source);
        const double t1 = number_at(pieces[r]["t1"], f + ".t1", source);
        if (r == 0) bps.push_back(t0);
        else if (t0 != bps.back()) config_error(source + ": field " + f + ".t0 must equal the previous t1");
        bps.push_back(t1);
    }
    std::vector<ValueBuckets> buckets;
    for (const auto& d : inst.base) buckets.push_back(ActivationPolicy::default_buckets(d));
    try {
        ActivationPolicy act(bps, buckets, inst.copies);
        for (std::size_t r = 0; r < pieces.size(); ++r) {
            const std::string f = "pieces[" + std::to_string(r) + "].g";
            if (!pieces[r].contains("g") || !pieces[r]["g"].is_array()) config_error(source + ": field " + f + " must be an array");
            const json& g = pieces[r]["g"];
            for (std::size_t e = 0; e < g.size(); ++e) {
                const std::string fe = f + "[" + std::to_string(e) + "]";
                if (!g[e].is_array() || g[e].size() != 3 || !g[e][0].is_number_integer() ||
                    !g[e][1].is_number_integer()) {
                    config_error(source + ": field " + fe + " must be [identity, bucket, prob]");
                }
                const int i = g[e][0].get<int>();
                const int b = g[e][1].get<int>();
                if (i < 0 || static_cast<std::size_t>(i) >= inst.n() || b < 0 ||
                    static_cast<std::size_t>(b) >= act.buckets(static_cast<std::size_t>(i)).count()) {
                    config_error(source + ": field " + fe + " indexes outside the instance");
                }
                act.set_all_copies(r, static_cast<std::size_t>(i), static_cast<std::size_t>(b),
                                   number_at(g[e][2], fe + "[2]", source));
            }
        }
        return act;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        config_error(source + ": " + e.what());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string resolve_output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "prophet_out";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Outputs o;
        if (config.command == "eval") {
            o = run_eval(config);
        } else if (config.command == "search-k") {
            o = run_search_k(config);
        } else if (config.command == "dominance") {
            o = run_dominance(config);
        } else if (config.command == "hardness") {
            o = run_hardness(config);
        } else if (config.command == "lemmas") {
            o = run_lemmas(config);
        } else {
            err << "usage error: unknown command '" << config.command
                << "' (eval|search-k|dominance|hardness|lemmas)\n";
            return kExitUsage;
        }
        const std::filesystem::path dir = resolve_output_dir(config.output_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) config_error("cannot create output directory '" + dir.string() + "': " + ec.message());
        std::vector<std::string> files{"results.csv", "summary.json"};
        for (const auto& [name, _] : o.extra_files) files.push_back(name);
        files.push_back("manifest.json");
        write_file(dir / "results.csv", o.csv);
        write_file(dir / "summary.json", o.summary.dump(2) + "\n");
        for (const auto& [name, content] : o.extra_files) write_file(dir / name, content);
        write_file(dir / "manifest.json", manifest(config, files).dump(2) + "\n");
        out << o.summary.dump(2) << "\n";
        if (!o.check_ok) {
            err << "check failed; see " << (dir / "summary.json").string() << "\n";
            return kExitCheckFailed;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Prophet secretary competition-complexity laboratory"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::optional<double> eps;
    std::optional<int> k;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--instance", cfg.instance_path, "Instance JSON file");
        sub->add_option("--epsilon", eps, "Approximation loss in (0, 1/e]");
        sub->add_option("--class", cfg.algorithm_class, "single | blind | general");
        sub->add_option("--policy", cfg.policy, "single | blind | adaptive | activation");
        sub->add_option("--policy-file", cfg.policy_path, "Activation table JSON");
        sub->add_option("--k", k, "Copies per reward (search-k: ignored; hardness: suite k)");
        sub->add_option("--evaluator", cfg.evaluator, "exact | mc");
        sub->add_option("--reps", cfg.reps, "Monte Carlo replications");
        sub->add_option("--seed", cfg.seed, "Master seed");
        sub->add_option("--ci", cfg.ci, "normal | hoeffding");
        sub->add_option("--grid", cfg.grid, "Blind schedule pieces on (2/k, 1]");
        sub->add_option("--cap", cfg.cap, "Largest k tried by search-k");
        sub->add_option("--trials", cfg.trials, "Lemma suite trials");
        sub->add_option("--tol", cfg.tolerance, "Dominance margin tolerance");
        sub->add_option("--suite", cfg.suite, "Hardness suite: time | general | activation | all");
        sub->add_option("--out", cfg.output_dir, "Output directory (default $PROPHET_OUT_DIR)");
    };
    for (const char* name : {"eval", "search-k", "dominance", "hardness", "lemmas"}) {
        CLI::App* sub = app.add_subcommand(name, std::string("Run ") + name);
        common(sub);
        sub->callback([&cfg, name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.epsilon = eps;
    cfg.k = k;
    return run(cfg, std::cout, std::cerr);
}

} // namespace prophet
