#include "prophet/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace prophet {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
constexpr double kLoadMassTolerance = 1e-9;

} // namespace

std::vector<double> merged_breakpoints(std::span<const Distribution> ds) {
    std::vector<double> grid;
    for (const auto& d : ds) {
        auto xs = d.breakpoints();
        grid.insert(grid.end(), xs.begin(), xs.end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

Quantile::Quantile(double q) : q_(q) {
    if (!(q >= 0.0 && q < 1.0)) {
        throw Error(ErrorKind::InvalidQuantile, "quantile must lie in [0,1), got " + std::to_string(q));
    }
}

Distribution::Distribution(DistributionKind kind, std::vector<double> xs, std::vector<double> left,
                           std::vector<double> right)
    : kind_(kind), xs_(std::move(xs)), left_(std::move(left)), right_(std::move(right)) {}

Distribution Distribution::discrete(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) {
        throw Error(ErrorKind::InvalidDistribution, "discrete law needs at least one atom");
    }
    double total = 0.0;
    for (const auto& [v, p] : atoms) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::InvalidDistribution, "atom value must be finite and nonnegative");
        }
        if (!(p > 0.0 && p <= 1.0)) {
            throw Error(ErrorKind::InvalidDistribution, "atom mass must lie in (0,1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kLoadMassTolerance) {
        throw Error(ErrorKind::InvalidDistribution,
                    "atom masses sum to " + std::to_string(total) + ", expected 1");
    }
    std::sort(atoms.begin(), atoms.end());

    std::vector<double> xs;
    std::vector<double> masses;
    for (const auto& [v, p] : atoms) {
        if (!xs.empty() && xs.back() == v) {
            masses.back() += p;
        } else {
            xs.push_back(v);
            masses.push_back(p);
        }
    }
    std::vector<double> left(xs.size());
    std::vector<double> right(xs.size());
    double cum = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        left[j] = cum;
        cum += masses[j] / total;
        right[j] = cum;
    }
    right.back() = 1.0;
    return Distribution(DistributionKind::DiscreteAtoms, std::move(xs), std::move(left), std::move(right));
}

Distribution Distribution::piecewise(std::vector<std::pair<double, double>> points) {
    if (points.empty()) {
        throw Error(ErrorKind::InvalidDistribution, "piecewise law needs at least one point");
    }
    std::vector<double> xs;
    std::vector<double> left;
    std::vector<double> right;
    for (std::size_t j = 0; j < points.size(); ++j) {
        const auto [x, f] = points[j];
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw Error(ErrorKind::InvalidDistribution, "cdf point x must be finite and nonnegative");
        }
        if (!(f >= 0.0 && f <= 1.0 + kLoadMassTolerance)) {
            throw Error(ErrorKind::InvalidDistribution, "cdf point value must lie in [0,1]");
        }
        if (j > 0) {
            if (!(x > xs.back())) {
                throw Error(ErrorKind::InvalidDistribution, "cdf points must be strictly increasing in x");
            }
            if (f < right.back()) {
                throw Error(ErrorKind::InvalidDistribution, "cdf values must be nondecreasing");
            }
        }
        xs.push_back(x);
        right.push_back(std::min(f, 1.0));
        // The only jump of a user-supplied piecewise law is the atom at x_0.
        left.push_back(j == 0 ? 0.0 : std::min(f, 1.0));
    }
    if (std::abs(right.back() - 1.0) > kLoadMassTolerance) {
        throw Error(ErrorKind::InvalidDistribution, "last cdf point must have F = 1");
    }
    right.back() = 1.0;
    if (xs.size() > 1) {
        left.back() = 1.0;
    }
    return Distribution(DistributionKind::PiecewiseLinearCdf, std::move(xs), std::move(left), std::move(right));
}

std::vector<std::pair<double, double>> Distribution::atoms() const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t j = 0; j < xs_.size(); ++j) {
        const double m = right_[j] - left_[j];
        if (m > 0.0) out.emplace_back(xs_[j], m);
    }
    return out;
}

std::size_t Distribution::find_breakpoint(double x) const noexcept {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it != xs_.end() && *it == x) return static_cast<std::size_t>(it - xs_.begin());
    return npos;
}

double Distribution::cdf(double x) const noexcept {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.begin()) return 0.0;
    const std::size_t j = static_cast<std::size_t>(it - xs_.begin()) - 1;
    if (j + 1 == xs_.size()) return 1.0;
    if (x == xs_[j]) return right_[j];
    const double frac = (x - xs_[j]) / (xs_[j + 1] - xs_[j]);
    return right_[j] + (left_[j + 1] - right_[j]) * frac;
}

double Distribution::cdf_left(double x) const noexcept {
    const std::size_t j = find_breakpoint(x);
    if (j != npos) return left_[j];
    return cdf(x);
}

double Distribution::mass_at(double x) const noexcept {
    const std::size_t j = find_breakpoint(x);
    if (j == npos) return 0.0;
    return right_[j] - left_[j];
}

double Distribution::reject_prob(const RandomizedThreshold& th) const noexcept {
    const std::size_t j = find_breakpoint(th.tau);
    if (j == npos) return cdf(th.tau);
    return left_[j] + (1.0 - th.accept_prob) * (right_[j] - left_[j]);
}

double Distribution::accept_prob(const RandomizedThreshold& th) const noexcept {
    const std::size_t j = find_breakpoint(th.tau);
    if (j == npos) return 1.0 - cdf(th.tau);
    return (1.0 - right_[j]) + th.accept_prob * (right_[j] - left_[j]);
}

double Distribution::accepted_mean(const RandomizedThreshold& th) const noexcept {
    return moment_open(th.tau, std::numeric_limits<double>::infinity()) +
           th.accept_prob * th.tau * mass_at(th.tau);
}

double Distribution::mass_open(double lo, double hi) const noexcept {
    if (!(hi > lo)) return 0.0;
    return std::max(0.0, cdf_left(hi) - cdf(lo));
}

double Distribution::moment_open(double lo, double hi) const noexcept {
    if (!(hi > lo)) return 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < xs_.size(); ++j) {
        const double x = xs_[j];
        if (x > lo && x < hi) total += x * (right_[j] - left_[j]);
        if (j + 1 < xs_.size()) {
            const double seg_mass = left_[j + 1] - right_[j];
            if (seg_mass <= 0.0) continue;
            const double a = std::max(lo, x);
            const double b = std::min(hi, xs_[j + 1]);
            if (b <= a) continue;
            const double density = seg_mass / (xs_[j + 1] - x);
            total += density * 0.5 * (b - a) * (b + a);
        }
    }
    return total;
}

double Distribution::mean() const noexcept {
    return moment_open(-1.0, std::numeric_limits<double>::infinity());
}

double Distribution::value_at_uniform(double u) const noexcept {
    auto it = std::lower_bound(right_.begin(), right_.end(), u);
    if (it == right_.end()) return xs_.back();
    const std::size_t j = static_cast<std::size_t>(it - right_.begin());
    if (j == 0 || u > left_[j]) return xs_[j];
    // u falls on the linear segment (x_{j-1}, x_j).
    const double lo = right_[j - 1];
    const double hi = left_[j];
    const double frac = (u - lo) / (hi - lo);
    return xs_[j - 1] + frac * (xs_[j] - xs_[j - 1]);
}

AugmentedValue Distribution::sample(Rng& rng) const {
    const double u = uniform01(rng);
    const double tiebreak = uniform01(rng);
    return {value_at_uniform(u), tiebreak};
}

double cdf(const Distribution& d, double x) noexcept { return d.cdf(x); }

RandomizedThreshold quantile_threshold(const Distribution& d, Quantile quantile) {
    const double q = quantile.value();
    auto xs = d.breakpoints();
    auto left = d.left_limits();
    auto right = d.right_values();

    auto it = std::lower_bound(right.begin(), right.end(), q);
    const std::size_t j = static_cast<std::size_t>(it - right.begin());
    const double mass = right[j] - left[j];
    if (j == 0) {
        return {xs[0], mass > 0.0 ? 1.0 - q / mass : 1.0};
    }
    if (left[j] >= q) {
        // Crossing on the linear segment before x_j (or at its left limit).
        const double lo = right[j - 1];
        const double hi = left[j];
        const double frac = (q - lo) / (hi - lo);
        const double tau = frac >= 1.0 ? xs[j] : xs[j - 1] + frac * (xs[j] - xs[j - 1]);
        return {tau, 1.0};
    }
    return {xs[j], 1.0 - (q - left[j]) / mass};
}

Distribution product_max(std::span<const Distribution> ds) {
    if (ds.empty()) {
        throw Error(ErrorKind::InvalidInstance, "product_max of an empty list");
    }
    const bool all_discrete =
        std::all_of(ds.begin(), ds.end(), [](const Distribution& d) { return d.is_discrete(); });
    std::vector<double> grid = merged_breakpoints(ds);

    std::vector<double> xs;
    std::vector<double> left;
    std::vector<double> right;
    for (double x : grid) {
        double fl = 1.0;
        double fr = 1.0;
        for (const auto& d : ds) {
            fl *= d.cdf_left(x);
            fr *= d.cdf(x);
        }
        if (all_discrete && fr == fl) continue;
        xs.push_back(x);
        left.push_back(fl);
        right.push_back(fr);
    }
    right.back() = 1.0;
    if (all_discrete) {
        // Keep segments exactly flat between atoms.
        for (std::size_t j = 1; j < xs.size(); ++j) left[j] = right[j - 1];
    }
    return Distribution(all_discrete ? DistributionKind::DiscreteAtoms : DistributionKind::PiecewiseLinearCdf,
                        std::move(xs), std::move(left), std::move(right));
}

Distribution nth_root(const Distribution& d, int n) {
    if (n < 1) {
        throw Error(ErrorKind::InvalidParameter, "nth_root needs n >= 1");
    }
    if (n == 1) return d;
    const double inv = 1.0 / static_cast<double>(n);
    std::vector<double> left(d.left_.size());
    std::vector<double> right(d.right_.size());
    for (std::size_t j = 0; j < left.size(); ++j) {
        left[j] = std::pow(d.left_[j], inv);
        right[j] = std::pow(d.right_[j], inv);
    }
    if (d.is_discrete()) {
        for (std::size_t j = 1; j < left.size(); ++j) left[j] = right[j - 1];
    }
    return Distribution(d.kind_, d.xs_, std::move(left), std::move(right));
}

double product_reject_prob(std::span<const Distribution> ds, const RandomizedThreshold& th) noexcept {
    double r = 1.0;
    for (const auto& d : ds) r *= d.reject_prob(th);
    return r;
}

double product_cdf(std::span<const Distribution> ds, double x) noexcept {
    double r = 1.0;
    for (const auto& d : ds) r *= d.cdf(x);
    return r;
}

RandomizedThreshold product_quantile_threshold(std::span<const Distribution> ds, Quantile quantile) {
    if (ds.empty()) {
        throw Error(ErrorKind::InvalidInstance, "quantile of an empty product");
    }
    const std::vector<double> grid = merged_breakpoints(ds);
    return product_quantile_threshold(ds, grid, quantile);
}

RandomizedThreshold product_quantile_threshold(std::span<const Distribution> ds, std::span<const double> grid,
                                               Quantile quantile) {
    if (ds.empty() || grid.empty()) {
        throw Error(ErrorKind::InvalidInstance, "quantile of an empty product");
    }
    const double q = quantile.value();

    auto left_product = [&](double x) {
        double r = 1.0;
        for (const auto& d : ds) r *= d.cdf_left(x);
        return r;
    };

    std::size_t j = 0;
    while (j < grid.size() && product_cdf(ds, grid[j]) < q) ++j;
    if (j == grid.size()) j = grid.size() - 1; // q < 1 is always reached at the last point

    const double fl = left_product(grid[j]);
    if (fl >= q && j > 0) {
        // Continuous crossing inside (x_{j-1}, x_j]: the exact product is
        // monotone there, so bisect for the leftmost x with G(x) >= q.
        double lo = grid[j - 1];
        double hi = grid[j];
        while (true) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            if (product_cdf(ds, mid) >= q) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return {hi, 1.0};
    }
    if (fl >= q) return {grid[j], 1.0};

    // Atom case: solve prod_i (F_i(x-) + u m_i(x)) = q for the tiebreak cut u.
    const double x = grid[j];
    auto h = [&](double u) {
        double r = 1.0;
        for (const auto& d : ds) r *= d.cdf_left(x) + u * d.mass_at(x);
        return r;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (h(mid) >= q) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double u = std::abs(h(lo) - q) <= std::abs(h(hi) - q) ? lo : hi;
    return {x, 1.0 - u};
}

} // namespace prophet
