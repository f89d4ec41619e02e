// energy.hpp -- energy accounting for DFAs: per-run forgotten bits, the
// worst-case curve E(n), the asymptotic rate, and the stationary-distribution
// analysis (chi vs psi and the margin J) behind the linear lower bound.

#pragma once

#include <cstdint>
#include <vector>

#include "aec/dfa.hpp"

namespace aec {

// Sum of log2 chi over the states entered while consuming w.
double run_energy(const Dfa& d, const Word& w);

// E(n) for n = 0..n_max: worst-case forgotten bits over words of length
// exactly n, by one forward DP sweep in O(n_max * |Q| * |alphabet|).
struct EnergyCurve {
    std::vector<double> values; // values[n] = E(n)
    std::uint64_t fingerprint = 0;
    int n_max = 0;
};

EnergyCurve energy_curve(const Dfa& d, int n_max);
double energy_complexity(const Dfa& d, int n);

// The lexicographically least word of length n attaining E(n).  Tie-breaks
// compare exact products of in-degrees when n <= exact_limit and fall back to
// doubles with a 1e-9 tolerance beyond that.
Word energy_witness(const Dfa& d, int n, int exact_limit = 1024);

// lim E(n)/n: the maximum mean cycle weight over the reachable graph, edge
// (q, sigma) -> delta(q, sigma) weighted log2 chi(delta(q, sigma), sigma).
double energy_rate(const Dfa& d);

// Per-state probabilities; nonnegative, summing to 1.
struct Distribution {
    std::vector<double> probs;
};

// The Cesaro limit of the uniform-random-symbol chain started at start:
// absorption probabilities of the recurrent classes, each weighted by its
// unique stationary vector.  Fixed by one chain step to within 1e-10.
Distribution stationary(const Dfa& d);

// Residual ||pi P - pi||_inf of a candidate stationary vector.
double stationary_residual(const Dfa& d, const Distribution& dist);

// psi(q, sigma): incoming sigma-edges from sources with positive probability.
struct RestrictedProfile {
    int state_count = 0;
    int symbol_count = 0;
    std::vector<int> psi;

    int operator()(int state, int symbol) const {
        return psi[static_cast<std::size_t>(state) * symbol_count + symbol];
    }
};

RestrictedProfile restricted_profile(const Dfa& d, const Distribution& dist);

// Expected forgotten bits of one chain step under dist (which must be
// stationary within 1e-9):
//   sum_q dist(q) * (1/k) * sum_sigma log2 profile(delta(q, sigma), sigma).
double expected_step_energy(const Dfa& d, const Distribution& dist, const InDegreeProfile& chi);
double expected_step_energy(const Dfa& d, const Distribution& dist, const RestrictedProfile& psi);

// The margin J: max over entered pairs (q, sigma) with psi < chi of
// P(enter q via sigma) * (log2 chi - log2 psi); 0 when no pair qualifies.
double lower_bound_margin(const Dfa& d);

// Landauer conversion: bits * k_B * T * ln 2, k_B = 1.380649e-23 J/K.
double bits_to_joules(double bits, double temperature_kelvin);

} // namespace aec
