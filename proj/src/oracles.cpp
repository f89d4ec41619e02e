#include "aec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "aec/error.hpp"
#include "aec/rng.hpp"

namespace aec {

namespace {

// n^(n*k) with saturation at 2^63
std::uint64_t table_count(int n, int k) {
    std::uint64_t count = 1;
    for (int i = 0; i < n * k; ++i) {
        if (count > (1ULL << 63) / static_cast<std::uint64_t>(n)) return 1ULL << 63;
        count *= static_cast<std::uint64_t>(n);
    }
    return count;
}

std::vector<int> decode_table(std::uint64_t index, int n, int k) {
    std::vector<int> delta(static_cast<std::size_t>(n) * k);
    for (std::size_t i = 0; i < delta.size(); ++i) {
        delta[i] = static_cast<int>(index % static_cast<std::uint64_t>(n));
        index /= static_cast<std::uint64_t>(n);
    }
    return delta;
}

// One BFS answers both filters: all states reachable from 0, and discovery
// order (symbols in alphabet order) equal to 0, 1, 2, ...
void bfs_shape(const std::vector<int>& delta, int n, int k, bool& all_reachable,
               bool& canonical) {
    std::vector<int> order;
    std::vector<std::uint8_t> seen(n, 0);
    order.reserve(n);
    order.push_back(0);
    seen[0] = 1;
    canonical = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (int s = 0; s < k; ++s) {
            int t = delta[static_cast<std::size_t>(order[head]) * k + s];
            if (!seen[t]) {
                if (t != static_cast<int>(order.size())) canonical = false;
                seen[t] = 1;
                order.push_back(t);
            }
        }
    }
    all_reachable = order.size() == static_cast<std::size_t>(n);
    if (!all_reachable) canonical = false; // canonical form has no dead states
}

void check_guard(const EnumerationSpec& spec) {
    if (spec.max_states < 1)
        throw std::invalid_argument("enumeration: max_states must be >= 1");
    if (enumeration_candidate_bound(spec) > 1000000000ULL)
        throw ValidationError("enumeration: candidate bound " +
                              std::to_string(enumeration_candidate_bound(spec)) +
                              " exceeds 1e9; lower max_states");
}

// Visits every (table, shape flags) pair for the index range [from, to) of
// n-state tables.  Used by both the streaming API and the threaded searches.
template <typename Fn>
void scan_tables(const EnumerationSpec& spec, int n, std::uint64_t from, std::uint64_t to,
                 Fn&& fn) {
    const int k = spec.alphabet.size();
    for (std::uint64_t index = from; index < to; ++index) {
        std::vector<int> delta = decode_table(index, n, k);
        bool all_reachable = false, canonical = false;
        bfs_shape(delta, n, k, all_reachable, canonical);
        if (spec.reachable_only && !all_reachable) continue;
        if (spec.canonical_only && !canonical) continue;
        fn(index, delta);
    }
}

Dfa assemble(const EnumerationSpec& spec, int n, const std::vector<int>& delta,
             std::uint32_t mask) {
    Dfa d;
    d.alphabet = spec.alphabet;
    d.state_count = n;
    d.start = 0;
    d.delta = delta;
    d.accepting.resize(n);
    for (int q = 0; q < n; ++q) d.accepting[q] = (mask >> q) & 1u;
    return d;
}

} // namespace

std::uint64_t enumeration_candidate_bound(const EnumerationSpec& spec) {
    const int n = spec.max_states;
    const int k = spec.alphabet.size();
    const std::uint64_t tables = table_count(n, k);
    const std::uint64_t masks = n < 63 ? (1ULL << n) : (1ULL << 63);
    if (tables > (1ULL << 63) / masks) return 1ULL << 63;
    std::uint64_t total = tables * masks;
    if (total > (1ULL << 63) / static_cast<std::uint64_t>(n)) return 1ULL << 63;
    return total * static_cast<std::uint64_t>(n);
}

void enumerate_dfas(const EnumerationSpec& spec, const std::function<void(const Dfa&)>& yield) {
    check_guard(spec);
    for (int n = 1; n <= spec.max_states; ++n) {
        scan_tables(spec, n, 0, table_count(n, spec.alphabet.size()),
                    [&](std::uint64_t, const std::vector<int>& delta) {
                        const std::uint32_t mask_end = 1u << n;
                        for (std::uint32_t mask = 0; mask < mask_end; ++mask)
                            yield(assemble(spec, n, delta, mask));
                    });
    }
}

namespace {

// Runs fn over [0, total) split into contiguous per-thread chunks; results
// are merged by the caller, so any thread count yields the same answer.
void parallel_ranges(std::uint64_t total, int threads,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || total < 1024) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t from = chunk * t;
        std::uint64_t to = std::min(total, from + chunk);
        if (from >= to) break;
        pool.emplace_back(fn, t, from, to);
    }
    for (auto& th : pool) th.join();
}

} // namespace

std::optional<int> min_inflow_over_recognizers(const Dfa& target, int max_states, int threads) {
    EnumerationSpec spec{max_states, target.alphabet, true, true};
    check_guard(spec);
    const int k = spec.alphabet.size();

    int best = INT32_MAX;
    for (int n = 1; n <= max_states; ++n) {
        std::vector<int> local_best(std::max(1, threads), INT32_MAX);
        parallel_ranges(table_count(n, k), threads, [&](int tid, std::uint64_t from,
                                                        std::uint64_t to) {
            int& mine = local_best[tid];
            scan_tables(spec, n, from, to, [&](std::uint64_t, const std::vector<int>& delta) {
                // the in-degree bound is mask-independent, so losers skip the
                // equivalence checks entirely
                int max_inflow = 0;
                std::vector<int> inflow(static_cast<std::size_t>(n) * k, 0);
                for (int q = 0; q < n; ++q)
                    for (int s = 0; s < k; ++s) {
                        int c = ++inflow[static_cast<std::size_t>(delta[static_cast<std::size_t>(
                                             q) * k + s]) * k + s];
                        max_inflow = std::max(max_inflow, c);
                    }
                if (max_inflow >= mine) return;
                const std::uint32_t mask_end = 1u << n;
                for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
                    Dfa cand = assemble(spec, n, delta, mask);
                    if (equivalent(cand, target).equivalent) {
                        mine = max_inflow;
                        break;
                    }
                }
            });
        });
        for (int b : local_best) best = std::min(best, b);
    }
    if (best == INT32_MAX) return std::nullopt;
    return best;
}

std::optional<Dfa> find_reversible_recognizer(const Dfa& target, int max_states, int threads) {
    EnumerationSpec spec{max_states, target.alphabet, true, true};
    check_guard(spec);
    const int k = spec.alphabet.size();

    for (int n = 1; n <= max_states; ++n) {
        struct Hit {
            std::uint64_t index = ~0ULL;
            std::uint32_t mask = 0;
        };
        std::vector<Hit> hits(std::max(1, threads));
        parallel_ranges(table_count(n, k), threads, [&](int tid, std::uint64_t from,
                                                        std::uint64_t to) {
            Hit& mine = hits[tid];
            scan_tables(spec, n, from, to, [&](std::uint64_t index,
                                               const std::vector<int>& delta) {
                if (mine.index != ~0ULL) return; // chunk already has its first hit
                std::vector<std::uint8_t> hit_state(static_cast<std::size_t>(n) * k, 0);
                for (int q = 0; q < n; ++q)
                    for (int s = 0; s < k; ++s) {
                        std::uint8_t& cell = hit_state[static_cast<std::size_t>(delta[
                            static_cast<std::size_t>(q) * k + s]) * k + s];
                        if (cell) return; // same-symbol in-degree 2: not reversible
                        cell = 1;
                    }
                const std::uint32_t mask_end = 1u << n;
                for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
                    Dfa cand = assemble(spec, n, delta, mask);
                    if (equivalent(cand, target).equivalent) {
                        mine = {index, mask};
                        return;
                    }
                }
            });
        });
        Hit first;
        for (const Hit& h : hits)
            if (h.index < first.index || (h.index == first.index && h.mask < first.mask))
                first = h;
        if (first.index != ~0ULL)
            return assemble(spec, n, decode_table(first.index, n, k), first.mask);
    }
    return std::nullopt;
}

double brute_force_energy(const Dfa& d, int n) {
    if (n < 0) throw std::invalid_argument("brute_force_energy: n must be >= 0");
    const int k = d.alphabet.size();
    double words = std::pow(static_cast<double>(k), n);
    if (words > 1e7)
        throw ValidationError("brute_force_energy: |alphabet|^n exceeds 1e7 words");

    const InDegreeProfile chi = in_degree_profile(d);
    double best = 0.0;
    auto dfs = [&](auto&& self, int state, int remaining, double bits) -> void {
        if (remaining == 0) {
            best = std::max(best, bits);
            return;
        }
        for (int s = 0; s < k; ++s) {
            int t = d.next(state, s);
            self(self, t, remaining - 1, bits + std::log2(static_cast<double>(chi(t, s))));
        }
    };
    dfs(dfs, d.start, n, 0.0);
    return best;
}

MonteCarloResult monte_carlo_step_energy(const Dfa& d, int n, int samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("monte_carlo_step_energy: n must be >= 1");
    if (samples < 1) throw std::invalid_argument("monte_carlo_step_energy: samples must be >= 1");
    const int k = d.alphabet.size();
    const InDegreeProfile chi = in_degree_profile(d);

    SplitMix64 rng(seed);
    std::vector<double> per_word(samples);
    for (int i = 0; i < samples; ++i) {
        int q = d.start;
        double bits = 0.0;
        for (int step = 0; step < n; ++step) {
            int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
            q = d.next(q, s);
            bits += std::log2(static_cast<double>(chi(q, s)));
        }
        per_word[i] = bits / n;
    }

    MonteCarloResult res;
    for (double x : per_word) res.mean_bits_per_step += x;
    res.mean_bits_per_step /= samples;
    if (samples > 1) {
        double ss = 0.0;
        for (double x : per_word) {
            double dlt = x - res.mean_bits_per_step;
            ss += dlt * dlt;
        }
        res.std_error = std::sqrt(ss / (samples - 1)) / std::sqrt(static_cast<double>(samples));
    }
    return res;
}

} // namespace aec
