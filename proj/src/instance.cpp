#include "prophet/instance.hpp"

#include <algorithm>
#include <string>

#include "prophet/quadrature.hpp"

namespace prophet {

double Instance::support_max() const noexcept {
    double m = 0.0;
    for (const auto& d : base) m = std::max(m, d.support_max());
    return m;
}

Instance make_instance(std::vector<Distribution> base, int copies) {
    if (base.empty()) {
        throw Error(ErrorKind::InvalidInstance, "instance needs at least one base distribution");
    }
    if (copies < 1) {
        throw Error(ErrorKind::InvalidInstance, "copy count must be >= 1, got " + std::to_string(copies));
    }
    return Instance{std::move(base), copies};
}

double expected_max(std::span<const Distribution> base) {
    const std::vector<double> grid = merged_breakpoints(base);

    // Below the smallest breakpoint every CDF vanishes.
    double total = grid.front();
    // On each cell the product is a polynomial of degree <= n.
    const int order = static_cast<int>(base.size()) / 2 + 2;
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        total += gauss_legendre(
            [&](double x) { return 1.0 - product_cdf(base, x); }, grid[j], grid[j + 1], order);
    }
    return total;
}

OptLaw::OptLaw(std::vector<Distribution> base)
    : base_(std::move(base)),
      dist_(product_max(base_)),
      expected_value_(expected_max(base_)),
      grid_(merged_breakpoints(base_)) {}

RandomizedThreshold OptLaw::threshold_at(double q) const {
    return product_quantile_threshold(base_, grid_, Quantile(q));
}

double OptLaw::value_quantile(double q) const { return threshold_at(q).tau; }

OptLaw opt_law(const Instance& inst) { return OptLaw(inst.base); }

void sample_arrivals_into(const Instance& inst, Rng& rng, ArrivalSequence& out) {
    auto& ev = out.events;
    ev.resize(inst.total());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        const Distribution& d = inst.base[i];
        for (int j = 0; j < inst.copies; ++j) {
            ArrivalEvent& e = ev[idx++];
            e.time = uniform01(rng);
            e.identity = static_cast<int>(i);
            e.copy = j;
            e.value = d.sample(rng);
        }
    }
    std::sort(ev.begin(), ev.end(), [](const ArrivalEvent& a, const ArrivalEvent& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.identity != b.identity) return a.identity < b.identity;
        return a.copy < b.copy;
    });
}

ArrivalSequence sample_arrivals(const Instance& inst, Rng& rng) {
    ArrivalSequence seq;
    sample_arrivals_into(inst, rng, seq);
    return seq;
}

} // namespace prophet
