#include <cmath>

#include "doctest.h"
#include "prophet/instance.hpp"
#include "test_support.hpp"

using namespace prophet;

namespace {

Instance two_type(double eps, double p, int k) {
    return make_instance({Distribution::point_mass(1.0),
                          Distribution::discrete({{0.0, p}, {1.0 + std::sqrt(eps), 1.0 - p}})},
                         k);
}

} // namespace

TEST_CASE("instance construction") {
    const auto one = make_instance({Distribution::point_mass(1.0)}, 1);
    CHECK(one.total() == 1);
    CHECK(two_type(0.01, 0.25, 7).total() == 14);
    CHECK_THROWS_AS(make_instance({}, 1), Error);
    CHECK_THROWS_AS(make_instance({Distribution::point_mass(1.0)}, 0), Error);
}

TEST_CASE("OPT excludes the added copies") {
    const auto f = Distribution::piecewise({{0.0, 0.0}, {1.0, 0.3}, {2.0, 1.0}});
    const auto opt = opt_law(make_instance({f}, 3));
    for (int s = 0; s <= 40; ++s) {
        const double x = s / 20.0;
        CHECK(opt.cdf(x) == doctest::Approx(f.cdf(x)).epsilon(1e-15));
    }
    CHECK(opt.expected_value() == doctest::Approx(f.mean()).epsilon(1e-12));
}

TEST_CASE("expected value of OPT") {
    const double eps = 0.04;
    const double p = 0.2;
    const double closed = 1.0 + std::sqrt(eps) - p * std::sqrt(eps);
    CHECK(std::abs(opt_law(two_type(eps, p, 3)).expected_value() - closed) <= 1e-9);
    CHECK(opt_law(make_instance({Distribution::point_mass(2.5)}, 4)).expected_value() == doctest::Approx(2.5));
    const auto coin = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
    CHECK(opt_law(make_instance({coin, coin}, 1)).expected_value() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("opt_law does not depend on k") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Distribution> base;
        for (int i = 0; i < 3; ++i) base.push_back(prophet::testing::random_distribution(rng));
        CHECK(opt_law(make_instance(base, 1)).expected_value() == opt_law(make_instance(base, 10)).expected_value());
    }
}

TEST_CASE("arrival sampling") {
    Rng rng(22);
    const auto single = sample_arrivals(make_instance({Distribution::point_mass(1.0)}, 1), rng);
    REQUIRE(single.events.size() == 1);
    CHECK(single.events[0].time >= 0.0);
    CHECK(single.events[0].time < 1.0);

    const auto inst = make_instance({Distribution::point_mass(1.0), Distribution::point_mass(2.0)}, 3);
    double sum[2] = {0.0, 0.0};
    const int draws = 1'000'000;
    ArrivalSequence seq;
    for (int s = 0; s < draws; ++s) {
        sample_arrivals_into(inst, rng, seq);
        REQUIRE(seq.events.size() == 6);
        for (std::size_t e = 1; e < seq.events.size(); ++e) REQUIRE(seq.events[e - 1].time <= seq.events[e].time);
        for (const auto& ev : seq.events) sum[ev.identity] += ev.time;
    }
    CHECK(std::abs(sum[0] / (3.0 * draws) - 0.5) <= 0.002);
    CHECK(std::abs(sum[1] / (3.0 * draws) - 0.5) <= 0.002);

    Rng a(5);
    Rng b(5);
    const auto x = sample_arrivals(inst, a);
    const auto y = sample_arrivals(inst, b);
    REQUIRE(x.events.size() == y.events.size());
    for (std::size_t e = 0; e < x.events.size(); ++e) {
        CHECK(x.events[e].time == y.events[e].time);
        CHECK(x.events[e].identity == y.events[e].identity);
        CHECK(x.events[e].copy == y.events[e].copy);
        CHECK(x.events[e].value == y.events[e].value);
    }
}
