#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "prophet/cli_io.hpp"

using namespace prophet;
namespace fs = std::filesystem;

namespace {

const char* kInstance = R"({
  "base": [
    {"type": "discrete", "atoms": [[0, 0.5], ["1.5", "0.5"]]},
    {"type": "piecewise", "points": [[0, 0], [2, 1]]}
  ],
  "copies": 3
})";

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("prophet_cli_tests_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("instance parsing") {
    const auto inst = parse_instance(kInstance, "inst.json");
    CHECK(inst.n() == 2);
    CHECK(inst.copies == 3);
    CHECK(inst.base[0].is_discrete());
    CHECK(inst.base[0].mass_at(1.5) == doctest::Approx(0.5));
    CHECK(inst.base[1].cdf(1.0) == doctest::Approx(0.5));
}

TEST_CASE("instance errors name the location") {
    const std::string bad_json = error_of([] { parse_instance("{\n\"base\": [\n  {\"type\": }\n]}", "x.json"); });
    CHECK(bad_json.find("x.json") != std::string::npos);
    CHECK(bad_json.find("line 3") != std::string::npos);

    const std::string mass = error_of([] {
        parse_instance(R"({"base":[{"type":"discrete","atoms":[[0,1]]},{"type":"discrete","atoms":[[0,0.5],[1,0.4]]}]})",
                       "y.json");
    });
    CHECK(mass.find("base[1]") != std::string::npos);

    const std::string field = error_of(
        [] { parse_instance(R"({"base":[{"type":"discrete","atoms":[[0,"abc"]]}]})", "z.json"); });
    CHECK(field.find("base[0].atoms[0][1]") != std::string::npos);

    CHECK(error_of([] { parse_instance(R"({"base":[]})"); }).find("base") != std::string::npos);
    CHECK(error_of([] { parse_instance(R"({"base":[{"type":"normal"}]})"); }).find("normal") != std::string::npos);
    CHECK(error_of([] { parse_instance(R"({"base":[{"type":"discrete","atoms":[[1,1]]}],"copies":0})"); })
              .find("copies") != std::string::npos);

    const std::string missing = error_of([] { load_instance("/no/such/dir/instance.json"); });
    CHECK(missing.find("/no/such/dir/instance.json") != std::string::npos);
}

TEST_CASE("activation policy parsing") {
    const auto inst = parse_instance(R"({"base":[{"type":"discrete","atoms":[[0,0.5],[1,0.5]]}],"copies":2})");
    const auto act = parse_activation_policy(
        R"({"pieces":[{"t0":0,"t1":0.5,"g":[[0,3,1]]},{"t0":0.5,"t1":1,"g":[[0,1,0.5],[0,3,1]]}]})", inst);
    CHECK(act.pieces() == 2);
    CHECK(act.prob(0, 0, 1, 3) == 1.0);
    CHECK(act.prob(1, 0, 0, 1) == 0.5);
    CHECK(act.prob(0, 0, 0, 1) == 0.0);
    CHECK_THROWS_AS(parse_activation_policy(R"({"pieces":[{"t0":0,"t1":1,"g":[[2,0,1]]}]})", inst), Error);
    CHECK_THROWS_AS(parse_activation_policy(R"({"pieces":[{"t0":0,"t1":0.4,"g":[]}]})", inst), Error);
}

TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(1.0 / 0.0) == "inf");
    CHECK(format_double(-1.0 / 0.0) == "-inf");
}

TEST_CASE("output directory resolution") {
    ::setenv(kOutDirEnv, "/tmp/from_env", 1);
    CHECK(resolve_output_dir("flag_dir") == "flag_dir");
    CHECK(resolve_output_dir("") == "/tmp/from_env");
    ::unsetenv(kOutDirEnv);
    CHECK(resolve_output_dir("") == "prophet_out");
}

TEST_CASE("run writes results, summary and manifest") {
    const fs::path dir = scratch("eval");
    std::ofstream(dir / "inst.json") << kInstance;
    RunConfig cfg;
    cfg.command = "eval";
    cfg.instance_path = (dir / "inst.json").string();
    cfg.policy = "blind";
    cfg.grid = 32;
    cfg.epsilon = 0.1;
    cfg.output_dir = (dir / "out").string();
    std::ostringstream out;
    std::ostringstream err;
    CHECK(run(cfg, out, err) == kExitOk);
    CHECK(fs::exists(dir / "out" / "results.csv"));
    const auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary["method"] == "exact");
    CHECK(summary.contains("expected_opt"));
    CHECK(summary.contains("half_widths"));
    CHECK(summary["paper_bound_k"] == 6);
    const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
    CHECK(manifest["seed"] == 1);
    CHECK(manifest["config"]["policy"] == "blind");
    CHECK(manifest.contains("versions"));
    CHECK(slurp(dir / "out" / "manifest.json").find("time") == std::string::npos);
}

TEST_CASE("exit statuses") {
    const fs::path dir = scratch("status");
    std::ofstream(dir / "inst.json") << R"({"base":[{"type":"piecewise","points":[[0,0],[1,1]]}],"copies":1})";
    std::ostringstream out;
    std::ostringstream err;

    RunConfig fail;
    fail.command = "eval";
    fail.instance_path = (dir / "inst.json").string();
    fail.epsilon = 0.01;
    fail.output_dir = (dir / "fail").string();
    CHECK(run(fail, out, err) == kExitCheckFailed);

    RunConfig missing = fail;
    missing.instance_path = (dir / "absent.json").string();
    err.str("");
    CHECK(run(missing, out, err) == kExitUsage);
    CHECK(err.str().find("absent.json") != std::string::npos);

    RunConfig unknown;
    unknown.command = "frobnicate";
    CHECK(run(unknown, out, err) == kExitUsage);

    RunConfig no_eps = fail;
    no_eps.command = "search-k";
    no_eps.epsilon.reset();
    CHECK(run(no_eps, out, err) == kExitUsage);
}

TEST_CASE("identical configs give byte-identical CSV") {
    const fs::path dir = scratch("determinism");
    std::ofstream(dir / "inst.json") << kInstance;
    RunConfig cfg;
    cfg.command = "dominance";
    cfg.instance_path = (dir / "inst.json").string();
    cfg.policy = "adaptive";
    cfg.epsilon = 0.05;
    cfg.evaluator = "mc";
    cfg.reps = 5000;
    cfg.seed = 9;
    std::ostringstream out;
    std::ostringstream err;
    cfg.output_dir = (dir / "a").string();
    run(cfg, out, err);
    cfg.output_dir = (dir / "b").string();
    run(cfg, out, err);
    CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "b" / "results.csv"));
    CHECK(slurp(dir / "a" / "manifest.json").size() > 0);
}

TEST_CASE("cli_main parses flags") {
    const fs::path dir = scratch("main");
    const std::string out = (dir / "out").string();
    std::vector<std::string> args{"prophet_lab", "lemmas", "--trials", "5", "--seed", "3", "--out", out};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    CHECK(cli_main(static_cast<int>(argv.size()), argv.data()) == kExitOk);
    CHECK(fs::exists(dir / "out" / "results.csv"));

    std::vector<std::string> bad{"prophet_lab", "eval", "--reps", "many"};
    std::vector<char*> bargv;
    for (auto& a : bad) bargv.push_back(a.data());
    CHECK(cli_main(static_cast<int>(bargv.size()), bargv.data()) == kExitUsage);
}
