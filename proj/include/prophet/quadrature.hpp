#pragma once

#include <cmath>
#include <vector>

namespace prophet {

/// Gauss-Legendre nodes and weights on [-1, 1]; exact for polynomials of
/// degree <= 2*order - 1.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rules are computed once per order and shared (thread-safe).
const GaussLegendreRule& gauss_legendre_rule(int order);

template <class F>
double gauss_legendre(F&& f, double a, double b, int order) {
    const GaussLegendreRule& rule = gauss_legendre_rule(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

namespace detail {

template <class F>
double adaptive_step(F& f, double a, double b, double whole, double tol, int order, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_legendre(f, a, mid, order);
    const double right = gauss_legendre(f, mid, b, order);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= tol) return refined;
    return adaptive_step(f, a, mid, left, 0.5 * tol, order, depth - 1) +
           adaptive_step(f, mid, b, right, 0.5 * tol, order, depth - 1);
}

} // namespace detail

/// Bisect [a,b] until a Gauss-Legendre panel agrees with its two halves to
/// within `tol` (split proportionally between halves).
template <class F>
double adaptive_gauss_legendre(F&& f, double a, double b, double tol, int order = 33, int max_depth = 40) {
    const double whole = gauss_legendre(f, a, b, order);
    return detail::adaptive_step(f, a, b, whole, tol, order, max_depth);
}

} // namespace prophet
