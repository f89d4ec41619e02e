// support.hpp -- shared helpers for the test suites: seeded random machines
// and a brute-force Myhill-Nerode class counter used as an independent
// minimization oracle.

#pragma once

#include <cmath>
#include <vector>

#include "aec/dfa.hpp"
#include "aec/qfa.hpp"
#include "aec/rng.hpp"

namespace aec::testing {

// Uniform random total DFA with exactly `symbols` symbols.
inline Dfa random_dfa_k(SplitMix64& rng, int max_states, int symbols) {
    Dfa d;
    const int n = 1 + static_cast<int>(rng.below(max_states));
    d.alphabet = Alphabet::letters(symbols);
    d.state_count = n;
    d.start = static_cast<int>(rng.below(n));
    d.delta.resize(static_cast<std::size_t>(n) * symbols);
    for (auto& t : d.delta) t = static_cast<int>(rng.below(n));
    d.accepting.resize(n);
    for (auto& a : d.accepting) a = static_cast<std::uint8_t>(rng.below(2));
    return d;
}

// Uniform random total DFA: 1..max_states states, 1..max_symbols symbols,
// random start, each state accepting with probability 1/2.
inline Dfa random_dfa(SplitMix64& rng, int max_states, int max_symbols) {
    return random_dfa_k(rng, max_states, 1 + static_cast<int>(rng.below(max_symbols)));
}

// Random DFA whose reachable part has some same-symbol in-degree >= 2.
inline Dfa random_irreversible_dfa(SplitMix64& rng, int max_states, int max_symbols) {
    while (true) {
        Dfa d = random_dfa(rng, max_states, max_symbols);
        if (!is_reversible_dfa(renumber_canonical(d))) return d;
    }
}

// Random word of the given length.
inline Word random_word(SplitMix64& rng, int symbols, int length) {
    Word w(length);
    for (int& s : w) s = static_cast<int>(rng.below(symbols));
    return w;
}

// Pairwise-distinguishability refinement; counts Myhill-Nerode classes among
// reachable states.  Deliberately separate from the Hopcroft path it checks.
inline int nerode_class_count(const Dfa& d) {
    const Dfa t = renumber_canonical(d);
    const int n = t.state_count;
    const int k = t.alphabet.size();
    std::vector<std::uint8_t> distinct(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (t.accepting[a] != t.accepting[b]) distinct[static_cast<std::size_t>(a) * n + b] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (distinct[static_cast<std::size_t>(a) * n + b]) continue;
                for (int s = 0; s < k; ++s) {
                    if (distinct[static_cast<std::size_t>(t.next(a, s)) * n + t.next(b, s)]) {
                        distinct[static_cast<std::size_t>(a) * n + b] = 1;
                        changed = true;
                        break;
                    }
                }
            }
    }
    int classes = 0;
    for (int a = 0; a < n; ++a) {
        bool first = true;
        for (int b = 0; b < a; ++b)
            if (!distinct[static_cast<std::size_t>(a) * n + b]) first = false;
        if (first) ++classes;
    }
    return classes;
}

// Random valid QFA: l elements sliced from a Haar-ish random isometry (QR of
// complex Gaussians via Gram-Schmidt), so completeness holds to roundoff.
inline Qfa random_qfa(SplitMix64& rng, int n, int l, int symbols) {
    auto gauss = [&rng] {
        // Box-Muller from two uniform draws
        double u1 = (rng.next() >> 11) * 0x1.0p-53 + 1e-300;
        double u2 = (rng.next() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    auto random_isometry = [&]() {
        std::vector<CVector> cols;
        for (int j = 0; j < n; ++j) {
            CVector v(static_cast<std::size_t>(n) * l);
            for (auto& c : v) c = Complex(gauss(), gauss());
            cols.push_back(std::move(v));
        }
        return orthonormalize(cols);
    };

    Qfa m;
    m.n = n;
    m.alphabet = Alphabet::letters(symbols);
    m.start = 0;
    m.accepting.resize(n);
    for (auto& a : m.accepting) a = static_cast<std::uint8_t>(rng.below(2));
    auto build_op = [&] {
        Superoperator op;
        op.elements.assign(l, ComplexMatrix(n, n));
        const std::vector<CVector> cols = random_isometry();
        for (int j = 0; j < n; ++j)
            for (int block = 0; block < l; ++block)
                for (int i = 0; i < n; ++i)
                    op.elements[block].at(i, j) = cols[j][static_cast<std::size_t>(block) * n + i];
        return op;
    };
    m.endmarker_op = build_op();
    for (int s = 0; s < symbols; ++s) m.symbol_ops.push_back(build_op());
    return m;
}

} // namespace aec::testing
