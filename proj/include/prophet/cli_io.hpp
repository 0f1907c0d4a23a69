#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prophet/distributions.hpp"
#include "prophet/instance.hpp"
#include "prophet/policies.hpp"

namespace prophet {

/// Exit statuses of the command-line tool.
enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitCheckFailed = 2 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "PROPHET_OUT_DIR";

struct RunConfig {
    std::string command;
    std::string instance_path;
    std::string policy;
    std::string policy_path;
    std::optional<double> epsilon;
    std::string algorithm_class = "single";
    std::optional<int> k;
    std::string evaluator = "exact";
    std::uint64_t reps = 100000;
    std::uint64_t seed = 1;
    std::string ci = "normal";
    int grid = 512;
    int cap = 32;
    int trials = 200;
    double tolerance = 1e-6;
    std::string suite = "all";
    std::string output_dir;
};

/// {"type":"discrete","atoms":[[v,p],...]} or {"type":"piecewise","points":[[x,F],...]};
/// numbers may be JSON numbers or decimal strings. `field` prefixes error messages.
Distribution parse_distribution(const std::string& json_text, const std::string& field = "distribution");

/// {"base":[<distribution>...],"copies":k}. Errors carry the source name,
/// the line of malformed JSON, or the offending field path.
Instance parse_instance(const std::string& json_text, const std::string& source = "<memory>");
Instance load_instance(const std::string& path);

/// {"pieces":[{"t0":..,"t1":..,"g":[[i,bucket,prob],...]}]} with identities
/// 0-based and buckets indexed as in ActivationPolicy::default_buckets.
ActivationPolicy parse_activation_policy(const std::string& json_text, const Instance& inst,
                                         const std::string& source = "<memory>");

/// 17 significant digits; non-finite values as inf, -inf or nan.
std::string format_double(double v);

/// Output directory: the flag, else $PROPHET_OUT_DIR, else "prophet_out".
std::string resolve_output_dir(const std::string& flag);

/// Executes the command and writes results.csv, summary.json and
/// manifest.json. Returns an ExitStatus.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and calls run.
int cli_main(int argc, char** argv);

} // namespace prophet
