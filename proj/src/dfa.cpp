#include "aec/dfa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <string>

#include "aec/error.hpp"

namespace aec {

std::vector<int> Dfa::accepting_states() const {
    std::vector<int> out;
    for (int q = 0; q < state_count; ++q)
        if (accepting[q]) out.push_back(q);
    return out;
}

void validate_dfa(const Dfa& d) {
    const int k = d.alphabet.size();
    if (k < 1) throw ValidationError("empty alphabet");
    if (d.state_count < 1) throw ValidationError("state count must be positive");
    if (d.start < 0 || d.start >= d.state_count)
        throw ValidationError("start state " + std::to_string(d.start) + " out of range");
    if (d.delta.size() != static_cast<std::size_t>(d.state_count) * k)
        throw ValidationError("non-total delta: transition table has wrong size");
    for (std::size_t i = 0; i < d.delta.size(); ++i) {
        if (d.delta[i] < 0 || d.delta[i] >= d.state_count) {
            throw ValidationError("transition target " + std::to_string(d.delta[i]) +
                                  " out of range");
        }
    }
    if (d.accepting.size() != static_cast<std::size_t>(d.state_count))
        throw ValidationError("accepting mask has wrong size");
}

int InDegreeProfile::max() const {
    int m = 0;
    for (int c : chi) m = std::max(m, c);
    return m;
}

InDegreeProfile in_degree_profile(const Dfa& d) {
    const int k = d.alphabet.size();
    InDegreeProfile p;
    p.state_count = d.state_count;
    p.symbol_count = k;
    p.chi.assign(static_cast<std::size_t>(d.state_count) * k, 0);
    for (int q = 0; q < d.state_count; ++q)
        for (int s = 0; s < k; ++s)
            ++p.chi[static_cast<std::size_t>(d.next(q, s)) * k + s];
    return p;
}

bool accepts(const Dfa& d, const Word& w) {
    int q = d.start;
    for (int s : w) {
        if (s < 0 || s >= d.alphabet.size()) throw ParseError("unknown symbol index in word");
        q = d.next(q, s);
    }
    return d.accepts_state(q);
}

RunTrace run_trace(const Dfa& d, const Word& w) {
    const InDegreeProfile chi = in_degree_profile(d);
    RunTrace t;
    t.symbols = w;
    t.states.reserve(w.size() + 1);
    t.per_step_bits.reserve(w.size());
    int q = d.start;
    t.states.push_back(q);
    for (int s : w) {
        if (s < 0 || s >= d.alphabet.size()) throw ParseError("unknown symbol index in word");
        q = d.next(q, s);
        t.states.push_back(q);
        t.per_step_bits.push_back(std::log2(static_cast<double>(chi(q, s))));
    }
    return t;
}

std::vector<int> reachable_states(const Dfa& d) {
    std::vector<int> order;
    std::vector<std::uint8_t> seen(d.state_count, 0);
    std::queue<int> queue;
    queue.push(d.start);
    seen[d.start] = 1;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop();
        order.push_back(q);
        for (int s = 0; s < d.alphabet.size(); ++s) {
            int t = d.next(q, s);
            if (!seen[t]) {
                seen[t] = 1;
                queue.push(t);
            }
        }
    }
    return order;
}

Dfa renumber_canonical(const Dfa& d) {
    const int k = d.alphabet.size();
    const std::vector<int> order = reachable_states(d);
    std::vector<int> new_id(d.state_count, -1);
    for (int i = 0; i < static_cast<int>(order.size()); ++i) new_id[order[i]] = i;

    Dfa out;
    out.alphabet = d.alphabet;
    out.state_count = static_cast<int>(order.size());
    out.start = 0;
    out.delta.resize(static_cast<std::size_t>(out.state_count) * k);
    out.accepting.resize(out.state_count);
    for (int i = 0; i < out.state_count; ++i) {
        int q = order[i];
        out.accepting[i] = d.accepting[q];
        for (int s = 0; s < k; ++s)
            out.delta[static_cast<std::size_t>(i) * k + s] = new_id[d.next(q, s)];
    }
    return out;
}

namespace {

// Hopcroft refinement over a trimmed machine; returns block ids per state.
std::vector<int> hopcroft_blocks(const Dfa& d) {
    const int n = d.state_count;
    const int k = d.alphabet.size();

    // inverse transitions, flattened per symbol
    std::vector<std::vector<std::vector<int>>> inv(
        k, std::vector<std::vector<int>>(n));
    for (int q = 0; q < n; ++q)
        for (int s = 0; s < k; ++s) inv[s][d.next(q, s)].push_back(q);

    std::vector<int> block_of(n);
    std::vector<std::vector<int>> blocks;
    {
        std::vector<int> acc, rej;
        for (int q = 0; q < n; ++q) (d.accepting[q] ? acc : rej).push_back(q);
        if (!acc.empty()) {
            for (int q : acc) block_of[q] = static_cast<int>(blocks.size());
            blocks.push_back(std::move(acc));
        }
        if (!rej.empty()) {
            for (int q : rej) block_of[q] = static_cast<int>(blocks.size());
            blocks.push_back(std::move(rej));
        }
    }

    std::deque<std::pair<int, int>> work; // (block id, symbol)
    for (int s = 0; s < k; ++s)
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b) work.emplace_back(b, s);

    std::vector<int> hit_count(blocks.size() + n, 0); // scratch, grows with blocks
    while (!work.empty()) {
        auto [a, s] = work.front();
        work.pop_front();

        // X = states whose s-successor lies in block a
        std::vector<int> x;
        for (int q : blocks[a])
            for (int src : inv[s][q]) x.push_back(src);
        if (x.empty()) continue;

        // group X members by their current block
        std::vector<int> touched;
        std::vector<std::vector<int>> in_x(blocks.size());
        for (int q : x) {
            int b = block_of[q];
            if (in_x[b].empty()) touched.push_back(b);
            in_x[b].push_back(q);
        }

        for (int b : touched) {
            if (in_x[b].size() == blocks[b].size()) continue; // no split
            // split block b into (b intersect X) and the rest
            std::vector<int> rest;
            std::vector<std::uint8_t> member(n, 0);
            for (int q : in_x[b]) member[q] = 1;
            for (int q : blocks[b])
                if (!member[q]) rest.push_back(q);

            const int nb = static_cast<int>(blocks.size());
            blocks[b] = in_x[b];
            for (int q : rest) block_of[q] = nb;
            blocks.push_back(std::move(rest));
            in_x.emplace_back();

            // classic rule: refine with the smaller of the two halves
            for (int s2 = 0; s2 < k; ++s2) {
                if (blocks[b].size() <= blocks[nb].size())
                    work.emplace_back(b, s2);
                else
                    work.emplace_back(nb, s2);
            }
        }
    }
    return block_of;
}

} // namespace

Dfa minimize(const Dfa& d) {
    const Dfa trimmed = renumber_canonical(d);
    const int k = trimmed.alphabet.size();
    const std::vector<int> block_of = hopcroft_blocks(trimmed);
    const int block_count = 1 + *std::max_element(block_of.begin(), block_of.end());

    Dfa quotient;
    quotient.alphabet = trimmed.alphabet;
    quotient.state_count = block_count;
    quotient.start = block_of[trimmed.start];
    quotient.delta.assign(static_cast<std::size_t>(block_count) * k, -1);
    quotient.accepting.assign(block_count, 0);
    for (int q = 0; q < trimmed.state_count; ++q) {
        int b = block_of[q];
        quotient.accepting[b] = trimmed.accepting[q];
        for (int s = 0; s < k; ++s)
            quotient.delta[static_cast<std::size_t>(b) * k + s] = block_of[trimmed.next(q, s)];
    }
    return renumber_canonical(quotient);
}

EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) throw ValidationError("alphabet mismatch");
    const int k = a.alphabet.size();

    struct Node {
        int qa, qb;
        int parent;  // index into nodes, -1 for the root
        int symbol;  // symbol consumed to reach this node
    };
    std::vector<Node> nodes;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(a.state_count) * b.state_count, 0);
    auto mark = [&](int qa, int qb) -> bool {
        std::uint8_t& cell = seen[static_cast<std::size_t>(qa) * b.state_count + qb];
        if (cell) return false;
        cell = 1;
        return true;
    };

    nodes.push_back({a.start, b.start, -1, -1});
    mark(a.start, b.start);

    // BFS over the product; queue order is length-then-lex order of the
    // discovery words, so the first differing pair yields the least witness.
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const Node node = nodes[head];
        if (a.accepts_state(node.qa) != b.accepts_state(node.qb)) {
            Word w;
            for (int i = static_cast<int>(head); nodes[i].parent >= 0; i = nodes[i].parent)
                w.push_back(nodes[i].symbol);
            std::reverse(w.begin(), w.end());
            return {false, std::move(w)};
        }
        for (int s = 0; s < k; ++s) {
            int qa = a.next(node.qa, s);
            int qb = b.next(node.qb, s);
            if (mark(qa, qb)) nodes.push_back({qa, qb, static_cast<int>(head), s});
        }
    }
    return {true, std::nullopt};
}

bool is_reversible_dfa(const Dfa& d) {
    return in_degree_profile(d).max() <= 1;
}

bool is_group_language(const Dfa& d) {
    const Dfa m = minimize(d);
    const int k = m.alphabet.size();
    std::vector<std::uint8_t> hit(m.state_count);
    for (int s = 0; s < k; ++s) {
        std::fill(hit.begin(), hit.end(), 0);
        for (int q = 0; q < m.state_count; ++q) {
            int t = m.next(q, s);
            if (hit[t]) return false; // symbol not injective
            hit[t] = 1;
        }
    }
    return true;
}

} // namespace aec
