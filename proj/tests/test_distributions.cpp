#include <cmath>

#include "doctest.h"
#include "prophet/distributions.hpp"
#include "test_support.hpp"

using namespace prophet;
using prophet::testing::random_discrete;
using prophet::testing::random_distribution;
using prophet::testing::random_piecewise;

TEST_CASE("cdf examples") {
    CHECK(cdf(Distribution::point_mass(1.0), 0.5) == 0.0);
    const double eps = 0.01;
    const auto coin = Distribution::discrete({{0.0, 0.25}, {1.0 + std::sqrt(eps), 0.75}});
    CHECK(cdf(coin, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
    const auto uni2 = Distribution::piecewise({{0.0, 0.0}, {2.0, 1.0}});
    CHECK(cdf(uni2, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("quantile_threshold examples") {
    const auto d = Distribution::discrete({{1.0, 0.5}, {2.0, 0.5}});
    const auto half = quantile_threshold(d, Quantile(0.5));
    CHECK(half.tau == 1.0);
    CHECK(half.accept_prob == doctest::Approx(0.0));
    const auto quarter = quantile_threshold(d, Quantile(0.25));
    CHECK(quarter.tau == 1.0);
    CHECK(quarter.accept_prob == doctest::Approx(0.5).epsilon(1e-12));
    // Outcome enumeration: value 1 rejected w.p. 1 - a, value 2 never.
    CHECK(0.5 * (1.0 - quarter.accept_prob) == doctest::Approx(0.25).epsilon(1e-12));
    const auto uni = Distribution::piecewise({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(quantile_threshold(uni, Quantile(0.5)).tau == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("quantile outside [0,1] is rejected") {
    CHECK_THROWS_AS(Quantile(-0.1), Error);
    CHECK_THROWS_AS(Quantile(1.5), Error);
    CHECK_THROWS_AS(Quantile(std::nan("")), Error);
}

TEST_CASE("flat CDF region returns the leftmost point") {
    const auto d = Distribution::piecewise({{0.0, 0.0}, {1.0, 0.5}, {2.0, 0.5}, {3.0, 1.0}});
    CHECK(quantile_threshold(d, Quantile(0.5)).tau == doctest::Approx(1.0));
}

TEST_CASE("product_max examples") {
    const auto one = Distribution::point_mass(1.0);
    const Distribution single[] = {one};
    CHECK(product_max(single) == one);

    const auto coin = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
    const Distribution two[] = {coin, coin};
    const auto mx = product_max(two);
    const auto atoms = mx.atoms();
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].first == 0.0);
    CHECK(atoms[0].second == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(atoms[1].second == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("product_max CDF is the product of CDFs") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const bool discrete = trial % 2 == 0;
        std::vector<Distribution> ds;
        for (int i = 0; i < 3; ++i) ds.push_back(discrete ? random_discrete(rng, 3) : random_piecewise(rng));
        const auto mx = product_max(ds);
        if (discrete) {
            for (int s = 0; s < 1000; ++s) {
                const double x = 3.5 * uniform01(rng);
                CHECK(std::abs(mx.cdf(x) - product_cdf(ds, x)) <= 1e-12);
            }
        } else {
            for (double x : mx.breakpoints()) CHECK(std::abs(mx.cdf(x) - product_cdf(ds, x)) <= 1e-9);
        }
    }
}

TEST_CASE("nth_root examples") {
    const auto d = Distribution::discrete({{0.0, 0.25}, {1.0, 0.75}});
    CHECK(nth_root(d, 1) == d);
    const auto r = nth_root(d, 2);
    CHECK(r.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.cdf(1.0) == doctest::Approx(1.0));
    const Distribution pair[] = {r, r};
    const auto back = product_max(pair);
    CHECK(back.cdf(0.0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("nth_root then product_max of n copies reproduces the law") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_distribution(rng);
        const int n = 2 + trial % 4;
        const std::vector<Distribution> copies(static_cast<std::size_t>(n), nth_root(d, n));
        const auto back = product_max(copies);
        for (int s = 0; s <= 200; ++s) {
            const double x = d.support_max() * s / 200.0;
            CHECK(std::abs(back.cdf(x) - d.cdf(x)) <= 1e-9);
        }
    }
}

TEST_CASE("cdf lies in [0,1] and is nondecreasing") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = random_distribution(rng);
        double prev = -1.0;
        for (int s = 0; s < 1000; ++s) {
            const double x = -0.5 + 4.0 * s / 999.0;
            const double f = d.cdf(x);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            CHECK(f >= prev);
            prev = f;
        }
    }
}

TEST_CASE("quantile round trip through the induced rejection probability") {
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = random_distribution(rng);
        for (int s = 0; s < 20; ++s) {
            const double q = s / 20.0;
            const auto th = quantile_threshold(d, Quantile(q));
            // Rejection from atoms: everything below tau plus the retained share at tau.
            const double analytic = d.cdf_left(th.tau) + (1.0 - th.accept_prob) * d.mass_at(th.tau);
            CHECK(std::abs(analytic - q) <= 1e-12);
            CHECK(std::abs(d.reject_prob(th) - q) <= 1e-12);
        }
    }
}

TEST_CASE("sampling") {
    Rng rng(15);
    const auto one = Distribution::point_mass(1.0);
    for (int s = 0; s < 100; ++s) CHECK(one.sample(rng).value == 1.0);

    const auto coin = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
    Rng a(16);
    double sum = 0.0;
    const int n = 1'000'000;
    for (int s = 0; s < n; ++s) sum += coin.sample(a).value;
    CHECK(std::abs(sum / n - 0.5) <= 0.002);

    Rng x(99);
    Rng y(99);
    for (int s = 0; s < 1000; ++s) CHECK(coin.sample(x) == coin.sample(y));
}

TEST_CASE("invalid laws are rejected") {
    CHECK_THROWS_AS(Distribution::discrete({{0.0, 0.5}, {1.0, 0.4}}), Error);
    CHECK_THROWS_AS(Distribution::discrete({{-1.0, 1.0}}), Error);
    CHECK_THROWS_AS(Distribution::piecewise({{0.0, 0.0}, {1.0, 0.9}}), Error);
    CHECK_THROWS_AS(Distribution::piecewise({{0.0, 0.0}, {1.0, 0.6}, {0.5, 1.0}}), Error);
    CHECK_THROWS_AS(Distribution::piecewise({{0.0, 0.0}, {1.0, 0.6}, {2.0, 0.5}, {3.0, 1.0}}), Error);
}
