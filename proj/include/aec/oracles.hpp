// oracles.hpp -- brute-force ground truth: exhaustive DFA enumeration,
// string-enumeration energy, Monte Carlo expected energy, and bounded search
// for reversible recognizers.  Everything here is deliberately independent of
// the DP / transform code paths it cross-checks.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "aec/dfa.hpp"

namespace aec {

struct EnumerationSpec {
    int max_states = 1;
    Alphabet alphabet;
    bool reachable_only = true; // keep only machines whose states are all reachable
    bool canonical_only = true; // keep only BFS-canonical transition tables
};

// Candidate count n^(n*k) * 2^n * n at n = max_states; enumeration refuses to
// start when this exceeds 1e9.
std::uint64_t enumeration_candidate_bound(const EnumerationSpec& spec);

// Yields machines in deterministic order: state count ascending, transition
// table ascending (odometer order), accepting mask ascending.  With the
// default filters every reachable DFA appears exactly once up to isomorphism,
// because the BFS-canonical table is a canonical form.
void enumerate_dfas(const EnumerationSpec& spec, const std::function<void(const Dfa&)>& yield);

// Minimum over all enumerated recognizers of the target's language (up to
// max_states states) of the maximum same-symbol in-degree; nullopt when no
// recognizer that small exists.  The answer is bound-relative.
std::optional<int> min_inflow_over_recognizers(const Dfa& target, int max_states,
                                               int threads = 1);

// Some equivalent DFA with every in-degree at most 1, or nullopt if none
// exists within the bound (again bound-relative).
std::optional<Dfa> find_reversible_recognizer(const Dfa& target, int max_states,
                                              int threads = 1);

// Max of run_energy over all |alphabet|^n words; refuses beyond 1e7 words.
double brute_force_energy(const Dfa& d, int n);

struct MonteCarloResult {
    double mean_bits_per_step = 0.0;
    double std_error = 0.0;
};

// Average of run_energy(d, random word of length n) / n over `samples` words
// with uniform symbols drawn from SplitMix64(seed); reproducible by seed.
MonteCarloResult monte_carlo_step_energy(const Dfa& d, int n, int samples, std::uint64_t seed);

} // namespace aec
