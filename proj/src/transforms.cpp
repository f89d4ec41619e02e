#include "aec/transforms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "aec/error.hpp"
#include "aec/languages.hpp"

namespace aec {

BagPlan rebalance_plan(const Dfa& minimal) {
    const int c = minimal.state_count;
    const int k = minimal.alphabet.size();

    BagPlan plan;
    plan.bag_sizes.assign(c, 1);
    plan.per_symbol_in.assign(k, std::vector<long long>(c, 0));
    for (int q = 0; q < c; ++q)
        for (int s = 0; s < k; ++s) ++plan.per_symbol_in[s][minimal.next(q, s)];

    plan.slack.assign(c, 0);
    auto refresh_slack = [&](int i) {
        long long worst = 0;
        for (int s = 0; s < k; ++s) worst = std::max(worst, plan.per_symbol_in[s][i]);
        plan.slack[i] = static_cast<long long>(plan.bag_sizes[i]) * (k + 1) - worst;
    };
    for (int i = 0; i < c; ++i) refresh_slack(i);

    long long initial_negative = 0;
    for (int i = 0; i < c; ++i)
        if (plan.slack[i] < 0) initial_negative -= plan.slack[i];
    const long long cap = initial_negative * (k + 1);

    while (true) {
        int worst_bag = -1;
        for (int i = 0; i < c; ++i) {
            if (plan.slack[i] < 0 && (worst_bag < 0 || plan.slack[i] < plan.slack[worst_bag]))
                worst_bag = i;
        }
        if (worst_bag < 0) break;
        if (++plan.iterations > cap)
            throw std::logic_error("rebalance: iteration cap " + std::to_string(cap) +
                                   " exceeded; slack-raising loop failed to converge");
        ++plan.bag_sizes[worst_bag];
        for (int s = 0; s < k; ++s) ++plan.per_symbol_in[s][minimal.next(worst_bag, s)];
        refresh_slack(worst_bag);
        for (int s = 0; s < k; ++s) refresh_slack(minimal.next(worst_bag, s));
    }
    return plan;
}

Dfa rebalance(const Dfa& d) {
    const int k = d.alphabet.size();
    if (in_degree_profile(d).max() <= k + 1) return d; // already within the bound

    const Dfa m = minimize(d);
    const BagPlan plan = rebalance_plan(m);
    const int c = m.state_count;

    std::vector<int> offset(c + 1, 0);
    for (int i = 0; i < c; ++i) offset[i + 1] = offset[i] + plan.bag_sizes[i];

    Dfa out;
    out.alphabet = d.alphabet;
    out.state_count = offset[c];
    out.start = offset[m.start]; // copy 0 of the start bag
    out.accepting.assign(out.state_count, 0);
    out.delta.assign(static_cast<std::size_t>(out.state_count) * k, -1);
    for (int i = 0; i < c; ++i)
        for (int copy = 0; copy < plan.bag_sizes[i]; ++copy)
            out.accepting[offset[i] + copy] = m.accepting[i];

    // Distribute each bag's incoming transitions round-robin: for a fixed
    // (target bag, symbol), sources ordered by (source bag, copy) cycle
    // through the target copies, so no copy exceeds ceil(d_sigma / mu).
    for (int target = 0; target < c; ++target) {
        for (int s = 0; s < k; ++s) {
            long long counter = 0;
            for (int source = 0; source < c; ++source) {
                if (m.next(source, s) != target) continue;
                for (int copy = 0; copy < plan.bag_sizes[source]; ++copy) {
                    int tgt_copy = static_cast<int>(counter % plan.bag_sizes[target]);
                    out.delta[static_cast<std::size_t>(offset[source] + copy) * k + s] =
                        offset[target] + tgt_copy;
                    ++counter;
                }
            }
        }
    }
    return out;
}

Dfa tree_expand(const Dfa& d, int depth, std::uint64_t state_cap) {
    if (depth < 1) throw std::invalid_argument("tree_expand: depth must be >= 1");
    const Dfa m = minimize(d);
    const int c = m.state_count;
    const int k = m.alphabet.size();

    // windows of length 0..depth, ordered by (length, lex); offsets[l] =
    // number of windows shorter than l
    const auto cap_error = [&] {
        return ValidationError("tree_expand: state cap " + std::to_string(state_cap) +
                               " exceeded");
    };
    std::vector<std::uint64_t> offsets(depth + 2, 0);
    std::uint64_t level = 1;
    for (int l = 0; l <= depth; ++l) {
        offsets[l + 1] = offsets[l] + level;
        if (offsets[l + 1] > state_cap) throw cap_error();
        if (l < depth) {
            if (level > ~0ULL / static_cast<std::uint64_t>(k)) throw cap_error();
            level *= static_cast<std::uint64_t>(k);
        }
    }
    const std::uint64_t windows = offsets[depth + 1];
    if (windows > state_cap / static_cast<std::uint64_t>(c)) throw cap_error();
    const std::uint64_t total = static_cast<std::uint64_t>(c) * windows;

    // value[(r, w)] = minimal state after replaying w from root r
    std::vector<int> value(total);
    for (int r = 0; r < c; ++r) value[static_cast<std::size_t>(r) * windows] = r;
    for (int l = 1; l <= depth; ++l) {
        for (std::uint64_t parent = offsets[l - 1]; parent < offsets[l]; ++parent) {
            std::uint64_t child_base = offsets[l] + (parent - offsets[l - 1]) * k;
            for (int r = 0; r < c; ++r) {
                std::size_t row = static_cast<std::size_t>(r) * windows;
                int v = value[row + parent];
                for (int s = 0; s < k; ++s)
                    value[row + child_base + s] = m.next(v, s);
            }
        }
    }

    Dfa out;
    out.alphabet = m.alphabet;
    out.state_count = static_cast<int>(total);
    out.start = m.start * static_cast<int>(windows);
    out.accepting.resize(total);
    out.delta.resize(total * static_cast<std::size_t>(k));
    for (std::uint64_t id = 0; id < total; ++id)
        out.accepting[id] = m.accepting[value[id]];
    for (int r = 0; r < c; ++r) {
        std::size_t row = static_cast<std::size_t>(r) * windows;
        for (std::uint64_t wi = 0; wi < windows; ++wi) {
            std::size_t id = row + wi;
            for (int s = 0; s < k; ++s) {
                std::uint64_t tgt;
                if (wi < offsets[depth]) {
                    // extend the window
                    int l = 0;
                    while (wi >= offsets[l + 1]) ++l;
                    tgt = row + offsets[l + 1] + (wi - offsets[l]) * k + s;
                } else {
                    // window full: forget it and jump to the next root
                    tgt = static_cast<std::uint64_t>(m.next(value[id], s)) * windows;
                }
                out.delta[id * k + s] = static_cast<int>(tgt);
            }
        }
    }
    return out;
}

Dfa cycle_expand(const Dfa& d, int q, int m) {
    if (q < 0 || q >= d.state_count) throw std::invalid_argument("cycle_expand: state out of range");
    if (m < 2) throw std::invalid_argument("cycle_expand: m must be >= 2");
    const int k = d.alphabet.size();
    for (int s = 0; s < k; ++s) {
        if (d.next(q, s) != q)
            throw std::invalid_argument("cycle_expand: state " + std::to_string(q) +
                                        " is not a total self-loop state");
    }

    // cycle copy 0 keeps id q; copies 1..m-1 get ids n..n+m-2
    Dfa out;
    out.alphabet = d.alphabet;
    out.state_count = d.state_count + m - 1;
    out.start = d.start;
    out.accepting = d.accepting;
    out.accepting.resize(out.state_count, d.accepting[q]);
    out.delta.assign(static_cast<std::size_t>(out.state_count) * k, -1);
    auto copy_id = [&](int i) { return i == 0 ? q : d.state_count + i - 1; };
    for (int p = 0; p < d.state_count; ++p) {
        if (p == q) continue;
        for (int s = 0; s < k; ++s)
            out.delta[static_cast<std::size_t>(p) * k + s] = d.next(p, s);
    }
    for (int i = 0; i < m; ++i)
        for (int s = 0; s < k; ++s)
            out.delta[static_cast<std::size_t>(copy_id(i)) * k + s] = copy_id((i + 1) % m);
    return out;
}

Dfa gen_lbb() {
    Dfa d;
    d.alphabet = Alphabet::letters(2);
    d.state_count = 4;
    d.start = 0;
    d.accepting = {0, 0, 1, 0};
    //            a  b
    d.delta = {0, 1,  // 0: nothing useful yet
               0, 2,  // 1: one pending b
               3, 2,  // 2: saw bb, ends with b (accept)
               3, 2}; // 3: saw bb, ends with a
    return d;
}

Dfa gen_li(const Alphabet& alphabet) {
    Dfa d;
    d.alphabet = alphabet;
    d.state_count = 2;
    d.start = 0;
    d.accepting = {0, 1};
    d.delta.assign(static_cast<std::size_t>(2) * alphabet.size(), 1);
    return d;
}

Dfa gen_lj(int j) {
    if (j < 1) throw std::invalid_argument("gen_lj: j must be >= 1");
    if (j == 1) return gen_li(Alphabet::indexed(1));

    // states: I = 0; A_i = i; R_i = j + i  (i in 1..j)
    Dfa d;
    d.alphabet = Alphabet::indexed(j);
    d.state_count = 2 * j + 1;
    d.start = 0;
    d.accepting.assign(d.state_count, 0);
    for (int i = 1; i <= j; ++i) d.accepting[i] = 1;
    d.delta.assign(static_cast<std::size_t>(d.state_count) * j, -1);

    auto set = [&](int q, int sym_index, int target) {
        d.delta[static_cast<std::size_t>(q) * j + sym_index] = target;
    };
    for (int t = 0; t < j; ++t) set(0, t, j + t + 1); // I moves to R_{t+1}
    for (int i = 1; i <= j; ++i) {
        // both A_i and R_i represent "last symbol was s_i"
        for (int t = 0; t < j; ++t) {
            int m = t + 1;
            int target = (m == lj_successor(i, j)) ? m : j + m;
            set(i, t, target);
            set(j + i, t, target);
        }
    }
    return d;
}

} // namespace aec
