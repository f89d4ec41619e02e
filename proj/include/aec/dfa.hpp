// dfa.hpp -- deterministic finite automata: representation, minimization,
// equivalence and the structural queries the energy analysis rests on.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aec/alphabet.hpp"

namespace aec {

// A complete DFA: delta is total, states are dense 0-based indices.
struct Dfa {
    Alphabet alphabet;
    int state_count = 0;
    std::vector<int> delta;           // delta[q * k + sigma] = target state
    int start = 0;
    std::vector<std::uint8_t> accepting; // accepting[q] != 0 iff q accepts

    int next(int state, int symbol) const {
        return delta[static_cast<std::size_t>(state) * alphabet.size() + symbol];
    }
    bool accepts_state(int state) const { return accepting[static_cast<std::size_t>(state)] != 0; }
    std::vector<int> accepting_states() const;
};

// Throws ValidationError when the machine violates its invariants.
void validate_dfa(const Dfa& d);

// chi(q, sigma) = number of states whose sigma-transition enters q.
// Per-symbol column sums equal state_count.
struct InDegreeProfile {
    int state_count = 0;
    int symbol_count = 0;
    std::vector<int> chi; // chi[q * k + sigma]

    int operator()(int state, int symbol) const {
        return chi[static_cast<std::size_t>(state) * symbol_count + symbol];
    }
    int max() const;
};

InDegreeProfile in_degree_profile(const Dfa& d);

// The state sequence visited while consuming a word, with the bits forgotten
// at each step: per_step_bits[i] = log2 chi(states[i + 1], symbols[i]).
struct RunTrace {
    std::vector<int> states; // length |symbols| + 1, states[0] = start
    Word symbols;
    std::vector<double> per_step_bits;
};

bool accepts(const Dfa& d, const Word& w);
RunTrace run_trace(const Dfa& d, const Word& w);

// Hopcroft partition refinement on the reachable part; output is renumbered
// canonically (BFS order), so minimize is idempotent.
Dfa minimize(const Dfa& d);

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Word> counterexample; // lexicographically least shortest witness
};

// Product-construction BFS; requires identical alphabets.
EquivalenceResult equivalent(const Dfa& a, const Dfa& b);

// max chi(q, sigma) <= 1 on the machine as given.
bool is_reversible_dfa(const Dfa& d);

// True iff every symbol permutes the states of the minimal machine.
bool is_group_language(const Dfa& d);

// States renumbered in BFS discovery order from start (symbols in alphabet
// order); unreachable states dropped.  Isomorphic machines map to identical
// encodings.
Dfa renumber_canonical(const Dfa& d);

// Reachable state set in BFS discovery order.
std::vector<int> reachable_states(const Dfa& d);

} // namespace aec
