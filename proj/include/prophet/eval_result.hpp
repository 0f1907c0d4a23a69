#pragma once

#include <cstdint>
#include <string>

namespace prophet {

enum class Method { Exact, MonteCarlo };

inline const char* to_string(Method m) noexcept { return m == Method::Exact ? "exact" : "monte-carlo"; }

/// A value with its error bound: the quadrature tolerance for exact results,
/// the 99% confidence half-width for Monte Carlo ones.
struct EvalResult {
    double estimate = 0.0;
    double half_width = 0.0;
    Method method = Method::Exact;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
};

} // namespace prophet
