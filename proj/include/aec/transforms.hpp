// transforms.hpp -- language-preserving DFA rewrites that lower per-step or
// per-length energy, plus generators for the studied language families.

#pragma once

#include <cstdint>
#include <vector>

#include "aec/dfa.hpp"

namespace aec {

// The bag plan behind rebalance: bag i holds bag_sizes[i] equivalent copies
// of minimal state i.  per_symbol_in[sigma][i] is the number of incoming
// sigma-transitions the bag receives from the expanded machine, and
// slack[i] = bag_sizes[i] * (k + 1) - max_sigma per_symbol_in[sigma][i].
struct BagPlan {
    std::vector<int> bag_sizes;
    std::vector<long long> slack;
    std::vector<std::vector<long long>> per_symbol_in; // [symbol][bag]
    long long iterations = 0;
};

// Computes the slack-raising fixpoint on a minimal machine: repeatedly grow
// the bag with the smallest slack (lowest index on ties) until every slack is
// nonnegative.  Fails loudly if the iteration count exceeds the
// (initial negative slack) * (k + 1) bound.
BagPlan rebalance_plan(const Dfa& minimal);

// Rewrites d into an equivalent machine whose same-symbol in-degrees are all
// at most |alphabet| + 1.  Machines already within the bound are returned
// unchanged; otherwise the minimal machine is expanded per rebalance_plan,
// with incoming transitions distributed round-robin inside each bag.
Dfa rebalance(const Dfa& d);

// Equivalent machine that buffers up to `depth` symbols and replays them
// through the minimal machine, so bits are only forgotten on the steps that
// re-enter a tree root: at most floor(n / (depth + 1)) costly steps, each
// forgetting at most log2(C * |alphabet|^depth) bits.
Dfa tree_expand(const Dfa& d, int depth, std::uint64_t state_cap = 1000000);

// Replaces a total self-loop state q by an m-cycle of equivalent states; all
// external transitions into q enter the first cycle state, so only one in
// every m consecutive in-cycle steps forgets bits.
Dfa cycle_expand(const Dfa& d, int q, int m);

// The 4-state minimal machine for "contains bb and ends with b" over {a, b}.
Dfa gen_lbb();

// The 2-state minimal machine for "all non-empty words".
Dfa gen_li(const Alphabet& alphabet);

// The family over {s1..sj} of words ending with s_i s_{F(i)}; every
// recognizer needs a state with same-symbol in-degree >= j + 1.  For j >= 2
// this is the 2j+1-state machine with bags I, A_k, R_k; for j = 1 it is the
// 2-state machine for all non-empty unary words.
Dfa gen_lj(int j);

} // namespace aec
