// Serial reference against the OpenMP kernels. Results must agree exactly;
// only wall time differs.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prophet/exact_oracle.hpp"
#include "prophet/monte_carlo.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double seconds(F&& f, int repeats) {
    const auto t0 = Clock::now();
    for (int i = 0; i < repeats; ++i) f();
    return std::chrono::duration<double>(Clock::now() - t0).count() / repeats;
}

void report(const char* kernel, double serial_s, double parallel_s, double serial_v, double parallel_v) {
    std::printf("%-28s serial %10.6f s  parallel %10.6f s  speedup %6.2fx  identical %s\n", kernel, serial_s,
                parallel_s, serial_s / parallel_s, serial_v == parallel_v ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    const int k = argc > 1 ? std::atoi(argv[1]) : 16;
    const std::uint64_t reps = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200000;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads %d  k %d  replications %llu\n", threads, k, static_cast<unsigned long long>(reps));

    using namespace prophet;
    const Instance inst = make_instance({Distribution::discrete({{0.0, 0.5}, {1.0, 0.3}, {3.0, 0.2}}),
                                         Distribution::piecewise({{0.0, 0.0}, {1.0, 0.4}, {2.0, 1.0}}),
                                         Distribution::discrete({{0.5, 0.9}, {4.0, 0.1}})},
                                        k);
    const OptLaw opt = opt_law(inst);
    const ThresholdSchedule blind = make_blind_schedule(opt, k, 512);
    const std::vector<RewardGroup> groups = threshold_groups(inst, blind);
    IntegrationConfig icfg;

    double vs = 0.0;
    double vp = 0.0;
    const double ts = seconds([&] { vs = first_acceptance_integral_serial(blind.breakpoints(), groups, icfg); }, 5);
    const double tp = seconds([&] { vp = first_acceptance_integral(blind.breakpoints(), groups, icfg); }, 5);
    report("oracle blind E[ALG]", ts, tp, vs, vp);

    McConfig mc;
    mc.replications = reps;
    mc.master_seed = 2024;
    mc.parallel = false;
    EvalResult rs;
    EvalResult rp;
    const double ms = seconds([&] { rs = estimate_expected_value(inst, Policy{blind}, mc); }, 1);
    mc.parallel = true;
    const double mp = seconds([&] { rp = estimate_expected_value(inst, Policy{blind}, mc); }, 1);
    report("monte carlo blind E[ALG]", ms, mp, rs.estimate, rp.estimate);

    const Policy adaptive = make_adaptive(opt, inst, 0.05);
    mc.parallel = false;
    const double as = seconds([&] { rs = estimate_expected_value(inst, adaptive, mc); }, 1);
    mc.parallel = true;
    const double ap = seconds([&] { rp = estimate_expected_value(inst, adaptive, mc); }, 1);
    report("monte carlo adaptive E[ALG]", as, ap, rs.estimate, rp.estimate);
    return 0;
}
