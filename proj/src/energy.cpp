#include "aec/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aec/bignat.hpp"
#include "aec/dfa_io.hpp"
#include "aec/error.hpp"
#include "aec/hash.hpp"

namespace aec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log2 chi(delta(q, sigma), sigma) for every transition, flattened like delta.
std::vector<double> edge_weights(const Dfa& d, const InDegreeProfile& chi) {
    const int k = d.alphabet.size();
    std::vector<double> w(d.delta.size());
    for (int q = 0; q < d.state_count; ++q)
        for (int s = 0; s < k; ++s)
            w[static_cast<std::size_t>(q) * k + s] =
                std::log2(static_cast<double>(chi(d.next(q, s), s)));
    return w;
}

// Iterative Tarjan over the reachable part; returns component id per state
// (-1 for unreachable) and the component count.  Component ids are in
// reverse topological order of the condensation.
struct SccResult {
    std::vector<int> comp;
    int count = 0;
};

SccResult tarjan_scc(const Dfa& d) {
    const int n = d.state_count;
    const int k = d.alphabet.size();
    SccResult res;
    res.comp.assign(n, -1);

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int state;
        int edge;
    };
    std::vector<Frame> call;
    call.push_back({d.start, 0});
    index[d.start] = low[d.start] = next_index++;
    stack.push_back(d.start);
    on_stack[d.start] = 1;

    while (!call.empty()) {
        Frame& f = call.back();
        if (f.edge < k) {
            int t = d.next(f.state, f.edge++);
            if (index[t] < 0) {
                index[t] = low[t] = next_index++;
                stack.push_back(t);
                on_stack[t] = 1;
                call.push_back({t, 0});
            } else if (on_stack[t]) {
                low[f.state] = std::min(low[f.state], index[t]);
            }
        } else {
            if (low[f.state] == index[f.state]) {
                int id = res.count++;
                int q;
                do {
                    q = stack.back();
                    stack.pop_back();
                    on_stack[q] = 0;
                    res.comp[q] = id;
                } while (q != f.state);
            }
            int finished = f.state;
            call.pop_back();
            if (!call.empty())
                low[call.back().state] = std::min(low[call.back().state], low[finished]);
        }
    }
    return res;
}

// Karp's maximum mean cycle inside one strongly connected component.
// Returns -inf when the component has no internal edge.
double karp_max_mean(const Dfa& d, const std::vector<double>& w,
                     const std::vector<int>& members, const std::vector<int>& comp) {
    const int k = d.alphabet.size();
    const int n = static_cast<int>(members.size());
    std::vector<int> local(d.state_count, -1);
    for (int i = 0; i < n; ++i) local[members[i]] = i;

    struct Edge {
        int from, to;
        double weight;
    };
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        int q = members[i];
        for (int s = 0; s < k; ++s) {
            int t = d.next(q, s);
            if (comp[t] == comp[q])
                edges.push_back({i, local[t], w[static_cast<std::size_t>(q) * k + s]});
        }
    }
    if (edges.empty()) return kNegInf;

    // dp[r][v] = max weight of a length-r walk from members[0] to v
    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(n, kNegInf));
    dp[0][0] = 0.0;
    for (int r = 1; r <= n; ++r)
        for (const Edge& e : edges)
            if (dp[r - 1][e.from] != kNegInf)
                dp[r][e.to] = std::max(dp[r][e.to], dp[r - 1][e.from] + e.weight);

    double best = kNegInf;
    for (int v = 0; v < n; ++v) {
        if (dp[n][v] == kNegInf) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (int r = 0; r < n; ++r)
            if (dp[r][v] != kNegInf)
                worst = std::min(worst, (dp[n][v] - dp[r][v]) / (n - r));
        best = std::max(best, worst);
    }
    return best;
}

// Solves A X = B by Gaussian elimination with partial pivoting; A is m x m,
// B holds r right-hand-side columns.  Both are overwritten.
void solve_linear(std::vector<double>& a, std::vector<double>& b, int m, int r) {
    auto aa = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * m + j]; };
    auto bb = [&](int i, int j) -> double& { return b[static_cast<std::size_t>(i) * r + j]; };
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int row = col + 1; row < m; ++row)
            if (std::abs(aa(row, col)) > std::abs(aa(pivot, col))) pivot = row;
        if (std::abs(aa(pivot, col)) < 1e-13)
            throw ValidationError("singular linear system in stationary computation");
        if (pivot != col) {
            for (int j = 0; j < m; ++j) std::swap(aa(pivot, j), aa(col, j));
            for (int j = 0; j < r; ++j) std::swap(bb(pivot, j), bb(col, j));
        }
        for (int row = col + 1; row < m; ++row) {
            double f = aa(row, col) / aa(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < m; ++j) aa(row, j) -= f * aa(col, j);
            for (int j = 0; j < r; ++j) bb(row, j) -= f * bb(col, j);
        }
    }
    for (int col = m - 1; col >= 0; --col) {
        for (int j = 0; j < r; ++j) {
            double v = bb(col, j);
            for (int j2 = col + 1; j2 < m; ++j2) v -= aa(col, j2) * bb(j2, j);
            bb(col, j) = v / aa(col, col);
        }
    }
}

} // namespace

double run_energy(const Dfa& d, const Word& w) {
    const InDegreeProfile chi = in_degree_profile(d);
    double bits = 0.0;
    int q = d.start;
    for (int s : w) {
        if (s < 0 || s >= d.alphabet.size()) throw ParseError("unknown symbol index in word");
        q = d.next(q, s);
        bits += std::log2(static_cast<double>(chi(q, s)));
    }
    return bits;
}

EnergyCurve energy_curve(const Dfa& d, int n_max) {
    if (n_max < 0) throw std::invalid_argument("energy_curve: n_max must be >= 0");
    const int k = d.alphabet.size();
    const InDegreeProfile chi = in_degree_profile(d);
    const std::vector<double> w = edge_weights(d, chi);

    EnergyCurve curve;
    curve.n_max = n_max;
    curve.fingerprint = fnv1a64(serialize_dfa(d));
    curve.values.reserve(n_max + 1);

    std::vector<double> best(d.state_count, kNegInf), next_best(d.state_count);
    best[d.start] = 0.0;
    curve.values.push_back(0.0);
    for (int step = 1; step <= n_max; ++step) {
        std::fill(next_best.begin(), next_best.end(), kNegInf);
        for (int q = 0; q < d.state_count; ++q) {
            if (best[q] == kNegInf) continue;
            for (int s = 0; s < k; ++s) {
                std::size_t e = static_cast<std::size_t>(q) * k + s;
                int t = d.delta[e];
                next_best[t] = std::max(next_best[t], best[q] + w[e]);
            }
        }
        best.swap(next_best);
        curve.values.push_back(*std::max_element(best.begin(), best.end()));
    }
    return curve;
}

double energy_complexity(const Dfa& d, int n) {
    return energy_curve(d, n).values[static_cast<std::size_t>(n)];
}

Word energy_witness(const Dfa& d, int n, int exact_limit) {
    if (n < 0) throw std::invalid_argument("energy_witness: n must be >= 0");
    const int k = d.alphabet.size();
    const InDegreeProfile chi = in_degree_profile(d);
    Word witness;
    witness.reserve(n);

    if (n <= exact_limit) {
        // rem[r][q] = exact product of in-degrees along the best r-step walk
        // from q; delta is total, so every entry is a genuine product.
        std::vector<std::vector<BigNat>> rem(n + 1, std::vector<BigNat>(d.state_count));
        for (int r = 1; r <= n; ++r) {
            for (int q = 0; q < d.state_count; ++q) {
                BigNat best = BigNat::zero();
                for (int s = 0; s < k; ++s) {
                    int t = d.next(q, s);
                    BigNat cand = rem[r - 1][t];
                    cand.mul_small(static_cast<std::uint32_t>(chi(t, s)));
                    if (best < cand) best = cand;
                }
                rem[r][q] = std::move(best);
            }
        }
        int q = d.start;
        for (int r = n; r >= 1; --r) {
            for (int s = 0; s < k; ++s) {
                int t = d.next(q, s);
                BigNat cand = rem[r - 1][t];
                cand.mul_small(static_cast<std::uint32_t>(chi(t, s)));
                if (cand == rem[r][q]) {
                    witness.push_back(s);
                    q = t;
                    break;
                }
            }
        }
        return witness;
    }

    const std::vector<double> w = edge_weights(d, chi);
    std::vector<std::vector<double>> rem(n + 1, std::vector<double>(d.state_count, 0.0));
    for (int r = 1; r <= n; ++r)
        for (int q = 0; q < d.state_count; ++q) {
            double best = kNegInf;
            for (int s = 0; s < k; ++s) {
                std::size_t e = static_cast<std::size_t>(q) * k + s;
                best = std::max(best, w[e] + rem[r - 1][d.delta[e]]);
            }
            rem[r][q] = best;
        }
    int q = d.start;
    for (int r = n; r >= 1; --r) {
        for (int s = 0; s < k; ++s) {
            std::size_t e = static_cast<std::size_t>(q) * k + s;
            if (w[e] + rem[r - 1][d.delta[e]] >= rem[r][q] - 1e-9) {
                witness.push_back(s);
                q = d.delta[e];
                break;
            }
        }
    }
    return witness;
}

double energy_rate(const Dfa& d) {
    const InDegreeProfile chi = in_degree_profile(d);
    const std::vector<double> w = edge_weights(d, chi);
    const SccResult scc = tarjan_scc(d);

    std::vector<std::vector<int>> members(scc.count);
    for (int q = 0; q < d.state_count; ++q)
        if (scc.comp[q] >= 0) members[scc.comp[q]].push_back(q);

    // delta is total, so at least one reachable component carries a cycle
    double rate = kNegInf;
    for (const auto& m : members)
        rate = std::max(rate, karp_max_mean(d, w, m, scc.comp));
    return rate;
}

Distribution stationary(const Dfa& d) {
    const int k = d.alphabet.size();
    const SccResult scc = tarjan_scc(d);

    std::vector<std::vector<int>> members(scc.count);
    for (int q = 0; q < d.state_count; ++q)
        if (scc.comp[q] >= 0) members[scc.comp[q]].push_back(q);

    // a component is recurrent iff no edge leaves it
    std::vector<std::uint8_t> recurrent(scc.count, 1);
    for (int q = 0; q < d.state_count; ++q) {
        if (scc.comp[q] < 0) continue;
        for (int s = 0; s < k; ++s)
            if (scc.comp[d.next(q, s)] != scc.comp[q]) recurrent[scc.comp[q]] = 0;
    }

    // unique stationary vector of each recurrent class: solve pi P = pi
    // with the normalization row appended in place of the last equation
    std::vector<std::vector<double>> class_pi(scc.count);
    for (int c = 0; c < scc.count; ++c) {
        if (!recurrent[c]) continue;
        const auto& qs = members[c];
        const int m = static_cast<int>(qs.size());
        std::vector<int> local(d.state_count, -1);
        for (int i = 0; i < m; ++i) local[qs[i]] = i;

        std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) {
            for (int s = 0; s < k; ++s) {
                int j = local[d.next(qs[i], s)];
                a[static_cast<std::size_t>(j) * m + i] += 1.0 / k; // (P^T)[j][i]
            }
            a[static_cast<std::size_t>(i) * m + i] -= 1.0;
        }
        for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(m - 1) * m + i] = 1.0;
        std::vector<double> b(m, 0.0);
        b[m - 1] = 1.0;
        solve_linear(a, b, m, 1);
        class_pi[c] = std::move(b);
    }

    // absorption probabilities from transient states: (I - P_TT) H = P_T->C
    std::vector<int> transient;
    for (int c = 0; c < scc.count; ++c)
        if (!recurrent[c])
            for (int q : members[c]) transient.push_back(q);
    std::sort(transient.begin(), transient.end());

    std::vector<double> dist(d.state_count, 0.0);
    const int start_comp = scc.comp[d.start];
    if (recurrent[start_comp]) {
        const auto& qs = members[start_comp];
        for (std::size_t i = 0; i < qs.size(); ++i) dist[qs[i]] = class_pi[start_comp][i];
    } else {
        const int mt = static_cast<int>(transient.size());
        std::vector<int> local(d.state_count, -1);
        for (int i = 0; i < mt; ++i) local[transient[i]] = i;

        std::vector<int> rec_classes;
        for (int c = 0; c < scc.count; ++c)
            if (recurrent[c]) rec_classes.push_back(c);
        const int rc = static_cast<int>(rec_classes.size());
        std::vector<int> class_col(scc.count, -1);
        for (int j = 0; j < rc; ++j) class_col[rec_classes[j]] = j;

        std::vector<double> a(static_cast<std::size_t>(mt) * mt, 0.0);
        std::vector<double> b(static_cast<std::size_t>(mt) * rc, 0.0);
        for (int i = 0; i < mt; ++i) {
            a[static_cast<std::size_t>(i) * mt + i] = 1.0;
            for (int s = 0; s < k; ++s) {
                int t = d.next(transient[i], s);
                if (local[t] >= 0)
                    a[static_cast<std::size_t>(i) * mt + local[t]] -= 1.0 / k;
                else
                    b[static_cast<std::size_t>(i) * rc + class_col[scc.comp[t]]] += 1.0 / k;
            }
        }
        solve_linear(a, b, mt, rc);

        const int row = local[d.start];
        for (int j = 0; j < rc; ++j) {
            double weight = b[static_cast<std::size_t>(row) * rc + j];
            const int c = rec_classes[j];
            const auto& qs = members[c];
            for (std::size_t i = 0; i < qs.size(); ++i)
                dist[qs[i]] += weight * class_pi[c][i];
        }
    }

    double sum = 0.0;
    for (double& p : dist) {
        if (p < 0.0) {
            if (p < -1e-12) throw ValidationError("stationary: negative probability computed");
            p = 0.0;
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("stationary: probabilities sum to " + std::to_string(sum));
    return Distribution{std::move(dist)};
}

double stationary_residual(const Dfa& d, const Distribution& dist) {
    const int k = d.alphabet.size();
    if (dist.probs.size() != static_cast<std::size_t>(d.state_count))
        throw std::invalid_argument("stationary_residual: distribution size mismatch");
    std::vector<double> after(d.state_count, 0.0);
    for (int q = 0; q < d.state_count; ++q) {
        if (dist.probs[q] == 0.0) continue;
        for (int s = 0; s < k; ++s) after[d.next(q, s)] += dist.probs[q] / k;
    }
    double residual = 0.0;
    for (int q = 0; q < d.state_count; ++q)
        residual = std::max(residual, std::abs(after[q] - dist.probs[q]));
    return residual;
}

RestrictedProfile restricted_profile(const Dfa& d, const Distribution& dist) {
    const int k = d.alphabet.size();
    if (dist.probs.size() != static_cast<std::size_t>(d.state_count))
        throw std::invalid_argument("restricted_profile: distribution size mismatch");
    RestrictedProfile p;
    p.state_count = d.state_count;
    p.symbol_count = k;
    p.psi.assign(static_cast<std::size_t>(d.state_count) * k, 0);
    for (int q = 0; q < d.state_count; ++q) {
        if (dist.probs[q] <= 1e-12) continue;
        for (int s = 0; s < k; ++s) ++p.psi[static_cast<std::size_t>(d.next(q, s)) * k + s];
    }
    return p;
}

namespace {

template <typename Profile>
double expected_step_energy_impl(const Dfa& d, const Distribution& dist,
                                 const Profile& profile) {
    const double residual = stationary_residual(d, dist);
    if (residual > 1e-9)
        throw ValidationError("expected_step_energy: distribution is not stationary (residual " +
                              std::to_string(residual) + ")");
    const int k = d.alphabet.size();
    double bits = 0.0;
    for (int q = 0; q < d.state_count; ++q) {
        if (dist.probs[q] <= 0.0) continue;
        for (int s = 0; s < k; ++s) {
            int count = profile(d.next(q, s), s);
            if (count < 1)
                throw ValidationError("expected_step_energy: profile has zero count on an "
                                      "entered transition");
            bits += dist.probs[q] * (1.0 / k) * std::log2(static_cast<double>(count));
        }
    }
    return bits;
}

} // namespace

double expected_step_energy(const Dfa& d, const Distribution& dist, const InDegreeProfile& chi) {
    return expected_step_energy_impl(d, dist, chi);
}

double expected_step_energy(const Dfa& d, const Distribution& dist, const RestrictedProfile& psi) {
    return expected_step_energy_impl(d, dist, psi);
}

double lower_bound_margin(const Dfa& d) {
    const int k = d.alphabet.size();
    const Distribution dist = stationary(d);
    const InDegreeProfile chi = in_degree_profile(d);
    const RestrictedProfile psi = restricted_profile(d, dist);

    // P(enter q via sigma) under one stationary step; sources thresholded the
    // same way psi thresholds them so the two stay consistent
    std::vector<double> enter(static_cast<std::size_t>(d.state_count) * k, 0.0);
    for (int q = 0; q < d.state_count; ++q) {
        if (dist.probs[q] <= 1e-12) continue;
        for (int s = 0; s < k; ++s)
            enter[static_cast<std::size_t>(d.next(q, s)) * k + s] += dist.probs[q] / k;
    }

    double margin = 0.0;
    for (int q = 0; q < d.state_count; ++q) {
        for (int s = 0; s < k; ++s) {
            double p = enter[static_cast<std::size_t>(q) * k + s];
            if (p <= 0.0) continue;
            int full = chi(q, s), restricted = psi(q, s);
            if (restricted >= full) continue;
            margin = std::max(margin, p * (std::log2(static_cast<double>(full)) -
                                           std::log2(static_cast<double>(restricted))));
        }
    }
    return margin;
}

double bits_to_joules(double bits, double temperature_kelvin) {
    if (bits < 0.0) throw std::invalid_argument("bits_to_joules: bits must be >= 0");
    if (temperature_kelvin <= 0.0)
        throw std::invalid_argument("bits_to_joules: temperature must be positive");
    constexpr double boltzmann = 1.380649e-23; // J/K, SI exact
    return bits * boltzmann * temperature_kelvin * std::numbers::ln2;
}

} // namespace aec
