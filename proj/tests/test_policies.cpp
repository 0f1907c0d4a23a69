#include <cmath>

#include "doctest.h"
#include "prophet/policies.hpp"
#include "test_support.hpp"

using namespace prophet;
using namespace prophet::testing;

namespace {

ArrivalSequence sequence(std::vector<ArrivalEvent> events) { return ArrivalSequence{std::move(events)}; }

// Offline S from plain products over the realized suffixes.
double offline_S(const AdaptiveTwoThreshold& a, const ArrivalSequence& seq) {
    const std::size_t N = seq.events.size();
    double s = 0.0;
    for (std::size_t m = 0; m < N; ++m) {
        double prod = 1.0;
        for (std::size_t e = m; e < N; ++e) prod *= a.q[static_cast<std::size_t>(seq.events[e].identity)];
        if (prod <= a.epsilon * (1.0 + 1e-10)) s = seq.events[m].time;
    }
    return s;
}

void check_switch_agreement(const Instance& inst, double eps, std::uint64_t seed, int draws) {
    const auto a = make_adaptive(opt_law(inst), inst, eps);
    Rng rng(seed);
    std::vector<Phase> trace;
    for (int s = 0; s < draws; ++s) {
        const auto seq = sample_arrivals(inst, rng);
        const double S = offline_S(a, seq);
        REQUIRE(switch_time_S(a, seq) == S);
        const auto out = run_policy(a, seq, &trace);
        REQUIRE(trace.size() <= seq.events.size());
        for (std::size_t e = 0; e < trace.size(); ++e) {
            REQUIRE((trace[e] == Phase::Second) == (seq.events[e].time >= S));
        }
        if (out.stopped) {
            REQUIRE(seq.events[trace.size() - 1].time == out.stop_time);
        } else {
            REQUIRE(trace.size() == seq.events.size());
        }
    }
}

} // namespace

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(ThresholdSchedule({0.1, 1.0}, {{0.5, 1.0}}), Error);
    CHECK_THROWS_AS(ThresholdSchedule({0.0, 0.5}, {{0.5, 1.0}}), Error);
    CHECK_THROWS_AS(ThresholdSchedule({0.0, 0.5, 0.5, 1.0}, {{0.5, 1.0}, {0.5, 1.0}, {0.5, 1.0}}), Error);
    CHECK_THROWS_AS(ThresholdSchedule({0.0, 1.0}, {{0.5, 1.5}}), Error);
    CHECK_THROWS_AS(ThresholdSchedule({0.0, 1.0}, {{0.5, 1.0}, {0.2, 1.0}}), Error);
    const ThresholdSchedule s({0.0, 0.25, 1.0}, {{2.0, 1.0}, {1.0, 0.5}});
    CHECK(s.piece_at(0.0) == 0);
    CHECK(s.piece_at(0.25) == 1);
    CHECK(s.piece_at(1.0) == 1);
    CHECK(s.nonincreasing());
    const auto up = ThresholdSchedule({0.0, 0.25, 1.0}, {{1.0, 1.0}, {2.0, 0.5}});
    CHECK_FALSE(up.nonincreasing());
    const auto sorted = up.sorted_nonincreasing();
    CHECK(sorted.nonincreasing());
    CHECK(sorted.length(0) == doctest::Approx(0.75));
    CHECK(sorted.threshold(0).tau == 2.0);
}

TEST_CASE("value buckets") {
    const ValueBuckets b({1.0, 2.0});
    CHECK(b.count() == 5);
    CHECK(b.bucket_of(0.5) == 0);
    CHECK(b.bucket_of(1.0) == 1);
    CHECK(b.bucket_of(1.5) == 2);
    CHECK(b.bucket_of(2.0) == 3);
    CHECK(b.bucket_of(3.0) == 4);
    const auto d = Distribution::discrete({{0.0, 0.2}, {1.0, 0.3}, {3.0, 0.5}});
    double total = 0.0;
    for (std::size_t k = 0; k < b.count(); ++k) total += b.mass(d, k);
    CHECK(total == doctest::Approx(1.0));
    CHECK(b.moment(d, 4) == doctest::Approx(1.5));
}

TEST_CASE("single threshold is the OPT median") {
    const auto uni = Distribution::piecewise({{0.0, 0.0}, {1.0, 1.0}});
    const auto s = make_single_threshold(opt_law(make_instance({uni}, 1)));
    CHECK(s.pieces() == 1);
    CHECK(s.threshold(0).tau == doctest::Approx(0.5).epsilon(1e-15));

    const auto d = Distribution::discrete({{0.0, 0.25}, {1.0, 0.75}});
    const auto opt = opt_law(make_instance({d}, 1));
    const auto th = make_single_threshold(opt).threshold(0);
    CHECK(th.tau == 1.0);
    CHECK(opt.reject_prob(th) == doctest::Approx(0.5).epsilon(1e-15));

    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Distribution> base;
        for (int i = 0, n = uniform_int(rng, 1, 4); i < n; ++i) base.push_back(random_distribution(rng));
        const auto law = opt_law(make_instance(base, 1));
        CHECK(std::abs(law.reject_prob(make_single_threshold(law).threshold(0)) - 0.5) <= 1e-12);
    }
}

TEST_CASE("blind schedule") {
    CHECK(blind_quantile(0.1, 10) == 0.5);
    CHECK(blind_quantile(0.5, 10) == doctest::Approx(0.2).epsilon(1e-15));
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Distribution> base{random_distribution(rng), random_distribution(rng)};
        const auto opt = opt_law(make_instance(base, 1));
        for (int k : {1, 2, 3, 6, 20}) {
            const auto s = make_blind_schedule(opt, k, 64);
            CHECK(s.nonincreasing());
            CHECK(std::abs(opt.reject_prob(s.threshold(0)) - 0.5) <= 1e-12);
            if (k >= 3) {
                CHECK(s.pieces() == 65);
                CHECK(s.end(0) == doctest::Approx(2.0 / k));
                // Each piece uses the quantile at its left endpoint.
                for (std::size_t r = 1; r < s.pieces(); ++r) {
                    CHECK(std::abs(opt.reject_prob(s.threshold(r)) - blind_quantile(s.start(r), k)) <= 1e-12);
                }
            } else {
                CHECK(s.pieces() == 1);
            }
        }
    }
}

TEST_CASE("adaptive construction") {
    CHECK(ell_for_epsilon(std::exp(-4.0)) == 2);
    CHECK(ell_for_epsilon(0.05) == 2);
    CHECK(ell_for_epsilon(std::exp(-1.0)) == 1);
    CHECK(ell_for_epsilon(std::exp(-9.0)) == 3);
    CHECK_THROWS_AS(ell_for_epsilon(0.5), Error);
    CHECK_THROWS_AS(ell_for_epsilon(0.0), Error);

    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Distribution> base;
        for (int i = 0, n = uniform_int(rng, 1, 3); i < n; ++i) base.push_back(random_distribution(rng));
        const auto inst = make_instance(base, 16);
        const auto opt = opt_law(inst);
        const auto a = make_adaptive(opt, inst, std::exp(-4.0));
        CHECK(a.ell == 2);
        CHECK(std::abs(opt.reject_prob(a.tau1) - 0.75) <= 1e-12);
        CHECK(std::abs(opt.reject_prob(a.tau2) - std::exp(-2.0)) <= 1e-12);
        double prod = 1.0;
        for (double q : a.q) prod *= q;
        CHECK(std::abs(prod - std::exp(-2.0)) <= 1e-9);
        if (base.size() == 1) CHECK(std::abs(a.q[0] - std::exp(-2.0)) <= 1e-12);
    }
}

TEST_CASE("run_policy on hand-built sequences") {
    const auto one = ThresholdSchedule::constant({0.5, 1.0});
    const auto out = run_policy(one, sequence({{0.3, 0, 0, {1.0, 0.2}}}));
    CHECK(out.stopped);
    CHECK(out.stop_time == 0.3);
    CHECK(out.value == 1.0);

    // High threshold before t, accept anything positive after it.
    const double eps = 0.01;
    const double t = 0.4;
    const ThresholdSchedule sw({0.0, t, 1.0}, {{1.0, 0.0}, {0.0, 0.0}});
    const auto late = sequence({{0.5, 1, 0, {0.0, 0.9}}, {0.6, 0, 0, {1.0, 0.1}}, {0.7, 1, 1, {1.0 + std::sqrt(eps), 0.5}}});
    const auto pick = run_policy(sw, late);
    CHECK(pick.stopped);
    CHECK(pick.value == 1.0);
    CHECK(pick.identity == 0);

    const auto none = run_policy(ThresholdSchedule::constant({5.0, 1.0}), late);
    CHECK_FALSE(none.stopped);
    CHECK(none.value == 0.0);
}

TEST_CASE("randomized threshold reads the tiebreak") {
    const auto s = ThresholdSchedule::constant({1.0, 0.25});
    CHECK_FALSE(run_policy(s, sequence({{0.1, 0, 0, {1.0, 0.7}}})).stopped);
    CHECK(run_policy(s, sequence({{0.1, 0, 0, {1.0, 0.8}}})).stopped);
}

TEST_CASE("adaptive switch matches the offline S") {
    // One identity carries all of the tau2 rejection mass.
    const auto inst = make_instance({Distribution::piecewise({{0.0, 0.0}, {1.0, 1.0}}), Distribution::point_mass(0.1)}, 16);
    const auto a = make_adaptive(opt_law(inst), inst, std::exp(-4.0));
    CHECK(a.q[1] == 1.0);
    check_switch_agreement(inst, std::exp(-4.0), 34, 10000);

    Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Distribution> base;
        for (int i = 0, n = uniform_int(rng, 1, 3); i < n; ++i) base.push_back(random_distribution(rng));
        check_switch_agreement(make_instance(base, 8), 0.05, 36 + static_cast<std::uint64_t>(trial), 500);
    }
}

TEST_CASE("switch time examples") {
    const auto uni = Distribution::piecewise({{0.0, 0.0}, {1.0, 1.0}});
    {
        // Total product reaches eps; every proper suffix stays above it.
        const auto inst = make_instance({uni}, 2);
        const auto a = make_adaptive(opt_law(inst), inst, std::exp(-4.0) * (1.0 + 1e-9));
        const auto seq = sequence({{0.91, 0, 0, {0.1, 0.5}}, {0.95, 0, 1, {0.2, 0.5}}});
        CHECK(switch_time_S(a, seq) == 0.91);
    }
    {
        const auto inst = make_instance({uni}, 1);
        const auto a = make_adaptive(opt_law(inst), inst, std::exp(-1.0) * (1.0 + 1e-13));
        CHECK(a.q[0] <= a.epsilon);
        CHECK(switch_time_S(a, sequence({{0.37, 0, 0, {0.1, 0.5}}})) == 0.37);
    }
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Distribution> base{random_distribution(rng), random_distribution(rng)};
        const auto inst = make_instance(base, 8);
        const auto a = make_adaptive(opt_law(inst), inst, 0.05);
        std::vector<int> all(a.identities(), a.copies);
        // q(0) = e^{-k ell} <= eps.
        CHECK(a.log_inv_q(all) >= a.log_inv_epsilon());
    }
}

TEST_CASE("adaptive rejects foreign sequences") {
    const auto inst = make_instance({Distribution::point_mass(1.0)}, 2);
    const auto a = make_adaptive(opt_law(inst), inst, 0.05);
    CHECK_THROWS_AS(run_policy(a, sequence({{0.1, 0, 0, {1.0, 0.5}}})), Error);
    CHECK_THROWS_AS(run_policy(a, sequence({{0.1, 0, 0, {1.0, 0.5}}, {0.2, 3, 0, {1.0, 0.5}}})), Error);
}

TEST_CASE("monotone transforms leave threshold outcomes unchanged") {
    auto f = [](double x) { return x * x * x + 2.0 * x + 1.0; };
    Rng rng(38);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Distribution> base;
        for (int i = 0, n = uniform_int(rng, 1, 3); i < n; ++i) base.push_back(random_discrete(rng, 3));
        const auto inst = make_instance(base, 3);
        const auto s = random_schedule(rng, support_values(inst), 3);
        std::vector<RandomizedThreshold> ths;
        for (const auto& th : s.thresholds()) ths.push_back({f(th.tau), th.accept_prob});
        const ThresholdSchedule fs(s.breakpoints(), ths);
        for (int d = 0; d < 20; ++d) {
            auto seq = sample_arrivals(inst, rng);
            const auto a = run_policy(s, seq);
            for (auto& e : seq.events) e.value.value = f(e.value.value);
            const auto b = run_policy(fs, seq);
            CHECK(a.stopped == b.stopped);
            CHECK(a.stop_time == b.stop_time);
            CHECK(a.identity == b.identity);
            CHECK(a.copy == b.copy);
            if (a.stopped) CHECK(b.value == f(a.value));
        }
    }
}

TEST_CASE("lowering a threshold never delays the stop") {
    Rng rng(39);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Distribution> base{random_distribution(rng), random_distribution(rng)};
        const auto inst = make_instance(base, 3);
        const auto s = random_schedule(rng, {0.0, 0.5, 1.0, 1.5, 2.0}, 4).sorted_nonincreasing();
        const std::size_t r = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(s.pieces()) - 1));
        const auto th = s.threshold(r);
        const auto lower = s.with_threshold(r, {th.tau - 0.5 * uniform01(rng), th.accept_prob});
        for (int d = 0; d < 50; ++d) {
            const auto seq = sample_arrivals(inst, rng);
            CHECK(run_policy(lower, seq).stop_time <= run_policy(s, seq).stop_time);
        }
    }
}

TEST_CASE("threshold schedules are activation policies") {
    Rng rng(40);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Distribution> base;
        for (int i = 0, n = uniform_int(rng, 1, 3); i < n; ++i) base.push_back(random_distribution(rng));
        const auto inst = make_instance(base, 2);
        std::vector<double> values{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
        const auto s = random_schedule(rng, values, 3);
        const auto act = ActivationPolicy::from_schedule(s, inst);
        for (int d = 0; d < 1000; ++d) {
            const auto seq = sample_arrivals(inst, rng);
            REQUIRE(run_policy(s, seq) == run_policy(act, seq));
        }
    }
}

TEST_CASE("deterministic replay") {
    const auto inst = make_instance({Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}}),
                                     Distribution::piecewise({{0.0, 0.0}, {2.0, 1.0}})},
                                    8);
    const auto opt = opt_law(inst);
    const Policy policies[] = {make_single_threshold(opt), make_blind_schedule(opt, 16, 32),
                               make_adaptive(opt, inst, 0.05)};
    for (const auto& p : policies) {
        for (std::uint64_t r = 0; r < 200; ++r) {
            Rng a = make_substream(3, r);
            Rng b = make_substream(3, r);
            CHECK(run_policy(p, sample_arrivals(inst, a)) == run_policy(p, sample_arrivals(inst, b)));
        }
    }
}
