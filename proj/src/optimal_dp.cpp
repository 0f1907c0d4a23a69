#include <string>

#include "prophet/exact_oracle.hpp"

namespace prophet {

template <class Real>
Real optimal_online_value(const AtomTable<Real>& atoms, int copies, std::size_t state_cap) {
    if (atoms.empty() || copies < 1) {
        throw Error(ErrorKind::InvalidInstance, "dp needs at least one identity and copies >= 1");
    }
    const std::size_t n = atoms.size();
    const std::size_t radix = static_cast<std::size_t>(copies) + 1;
    std::size_t states = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (states > state_cap / radix) {
            throw Error(ErrorKind::TooLargeInstance,
                        "dp state space exceeds the cap of " + std::to_string(state_cap));
        }
        states *= radix;
    }

    // Mixed-radix index: digit i is the remaining count of identity i, so
    // removing one reward of identity i lowers the index by radix^i and every
    // successor is computed before its predecessor.
    std::vector<std::size_t> place(n, 1);
    for (std::size_t i = 1; i < n; ++i) place[i] = place[i - 1] * radix;

    std::vector<Real> value(states, Real(0));
    std::vector<int> digits(n, 0);
    for (std::size_t s = 1; s < states; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            if (++digits[i] < static_cast<int>(radix)) break;
            digits[i] = 0;
        }
        int total = 0;
        for (int c : digits) total += c;
        Real acc(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (digits[i] == 0) continue;
            const Real& cont = value[s - place[i]];
            Real e(0);
            for (const auto& [v, p] : atoms[i]) e += p * (v > cont ? v : cont);
            acc += Real(digits[i]) * e;
        }
        value[s] = acc / Real(total);
    }
    return value.back();
}

template double optimal_online_value<double>(const AtomTable<double>&, int, std::size_t);
template HighPrecision optimal_online_value<HighPrecision>(const AtomTable<HighPrecision>&, int, std::size_t);

EvalResult optimal_online_dp(const Instance& inst, std::size_t state_cap) {
    AtomTable<double> atoms;
    for (const auto& d : inst.base) {
        if (!d.is_discrete()) {
            throw Error(ErrorKind::InvalidInstance, "optimal_online_dp needs discrete base laws");
        }
        atoms.push_back(d.atoms());
    }
    return {optimal_online_value(atoms, inst.copies, state_cap), 0.0, Method::Exact, 0, 0};
}

} // namespace prophet
