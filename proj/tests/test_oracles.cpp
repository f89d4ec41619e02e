#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "aec/dfa_io.hpp"
#include "aec/energy.hpp"
#include "aec/error.hpp"
#include "aec/oracles.hpp"
#include "aec/transforms.hpp"
#include "support.hpp"

using namespace aec;

namespace {

Dfa parity_machine() {
    Dfa d;
    d.alphabet = Alphabet::letters(1);
    d.state_count = 2;
    d.start = 0;
    d.accepting = {1, 0};
    d.delta = {1, 0};
    return d;
}

// Independent head count of all-states-reachable DFAs up to isomorphism:
// enumerate every table and accept mask, dedupe by the minimum serialization
// over all start-fixing state permutations.  Shares nothing with the
// BFS-canonical filter it cross-checks.
int count_by_permutation_dedup(int max_states, int k) {
    std::set<std::string> seen;
    for (int n = 1; n <= max_states; ++n) {
        std::vector<int> perm(n);
        const std::uint64_t tables = [&] {
            std::uint64_t t = 1;
            for (int i = 0; i < n * k; ++i) t *= static_cast<std::uint64_t>(n);
            return t;
        }();
        for (std::uint64_t index = 0; index < tables; ++index) {
            Dfa d;
            d.alphabet = Alphabet::letters(k);
            d.state_count = n;
            d.start = 0;
            d.delta.resize(static_cast<std::size_t>(n) * k);
            std::uint64_t rest = index;
            for (auto& t : d.delta) {
                t = static_cast<int>(rest % n);
                rest /= n;
            }
            if (static_cast<int>(reachable_states(d).size()) != n) continue;
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                d.accepting.assign(n, 0);
                for (int q = 0; q < n; ++q) d.accepting[q] = (mask >> q) & 1u;

                std::string best;
                for (int i = 0; i < n; ++i) perm[i] = i;
                do {
                    if (perm[0] != 0) continue; // isomorphisms fix the start state
                    Dfa relabeled = d;
                    for (int q = 0; q < n; ++q) {
                        relabeled.accepting[perm[q]] = d.accepting[q];
                        for (int s = 0; s < k; ++s)
                            relabeled.delta[static_cast<std::size_t>(perm[q]) * k + s] =
                                perm[d.next(q, s)];
                    }
                    std::string key = serialize_dfa(relabeled);
                    if (best.empty() || key < best) best = std::move(key);
                } while (std::next_permutation(perm.begin(), perm.end()));
                seen.insert(best);
            }
        }
    }
    return static_cast<int>(seen.size());
}

} // namespace

TEST_CASE("enumeration of one-state machines") {
    EnumerationSpec spec{1, Alphabet::letters(1), true, true};
    int count = 0;
    enumerate_dfas(spec, [&](const Dfa& d) {
        validate_dfa(d);
        ++count;
    });
    CHECK(count == 2); // the single self-loop, accepting or not
}

TEST_CASE("enumeration counts match the permutation-dedup oracle") {
    for (int k : {1, 2}) {
        const int expected = count_by_permutation_dedup(2, k);
        EnumerationSpec spec{2, Alphabet::letters(k), true, true};
        int count = 0;
        enumerate_dfas(spec, [&](const Dfa& d) {
            validate_dfa(d);
            CHECK(static_cast<int>(reachable_states(d).size()) == d.state_count);
            ++count;
        });
        CHECK(count == expected);
    }
}

TEST_CASE("enumeration counts for two states are frozen") {
    // 2 one-state machines + 2 canonical tables x 4 masks for |alphabet| = 1;
    // 2 + 12 tables x 4 masks for |alphabet| = 2
    EnumerationSpec unary{2, Alphabet::letters(1), true, true};
    int unary_count = 0;
    enumerate_dfas(unary, [&](const Dfa&) { ++unary_count; });
    CHECK(unary_count == 10);

    EnumerationSpec binary{2, Alphabet::letters(2), true, true};
    int binary_count = 0;
    enumerate_dfas(binary, [&](const Dfa&) { ++binary_count; });
    CHECK(binary_count == 50);
}

TEST_CASE("enumeration yields each canonical machine exactly once") {
    EnumerationSpec spec{3, Alphabet::letters(1), true, true};
    std::set<std::string> seen;
    enumerate_dfas(spec, [&](const Dfa& d) {
        CHECK(serialize_dfa(renumber_canonical(d)) == serialize_dfa(d));
        CHECK(seen.insert(serialize_dfa(d)).second);
    });
}

TEST_CASE("enumeration guard rejects oversized searches") {
    EnumerationSpec spec{6, Alphabet::letters(3), true, true};
    CHECK_THROWS_AS(enumerate_dfas(spec, [](const Dfa&) {}), ValidationError);
}

TEST_CASE("minimum inflow over small recognizers of L_1") {
    const auto r = min_inflow_over_recognizers(gen_lj(1), 5);
    REQUIRE(r.has_value());
    CHECK(*r == 2); // the j+1 bound is attained
}

TEST_CASE("minimum inflow of the bb language within four states") {
    const auto r = min_inflow_over_recognizers(gen_lbb(), 4);
    REQUIRE(r.has_value());
    CHECK(*r == 3);
}

TEST_CASE("minimum inflow is nonincreasing in the state bound") {
    int last = INT32_MAX;
    for (int m = 2; m <= 4; ++m) {
        const auto r = min_inflow_over_recognizers(gen_lj(1), m);
        REQUIRE(r.has_value());
        CHECK(*r <= last);
        last = *r;
    }
}

TEST_CASE("reversible targets witness inflow one") {
    const auto r = min_inflow_over_recognizers(parity_machine(), 3);
    REQUIRE(r.has_value());
    CHECK(*r == 1);
}

TEST_CASE("no recognizer of L_2 fits in four states") {
    CHECK_FALSE(min_inflow_over_recognizers(gen_lj(2), 4).has_value());
}

TEST_CASE("reversible recognizer search") {
    const auto found = find_reversible_recognizer(parity_machine(), 3);
    REQUIRE(found.has_value());
    CHECK(is_reversible_dfa(*found));
    CHECK(equivalent(*found, parity_machine()).equivalent);

    CHECK_FALSE(find_reversible_recognizer(gen_lj(1), 4).has_value());
    CHECK_FALSE(find_reversible_recognizer(gen_lbb(), 4).has_value());
}

TEST_CASE("searches are deterministic across thread counts") {
    const auto a1 = min_inflow_over_recognizers(gen_lbb(), 4, 1);
    const auto a3 = min_inflow_over_recognizers(gen_lbb(), 4, 3);
    CHECK(a1 == a3);

    const auto f1 = find_reversible_recognizer(parity_machine(), 3, 1);
    const auto f3 = find_reversible_recognizer(parity_machine(), 3, 3);
    REQUIRE(f1.has_value());
    REQUIRE(f3.has_value());
    CHECK(serialize_dfa(*f1) == serialize_dfa(*f3));
}

TEST_CASE("brute force energy") {
    CHECK(brute_force_energy(gen_lbb(), 3) == doctest::Approx(2 * std::log2(3.0)));
    CHECK(brute_force_energy(gen_lbb(), 0) == 0.0);
    CHECK_THROWS_AS(brute_force_energy(gen_lbb(), 24), ValidationError);
}

TEST_CASE("monte carlo step energy is reproducible and honest") {
    const Dfa p = parity_machine();
    const MonteCarloResult zero = monte_carlo_step_energy(p, 50, 20, 99);
    CHECK(zero.mean_bits_per_step == 0.0);
    CHECK(zero.std_error == 0.0);

    const MonteCarloResult a = monte_carlo_step_energy(gen_lbb(), 500, 40, 1234);
    const MonteCarloResult b = monte_carlo_step_energy(gen_lbb(), 500, 40, 1234);
    CHECK(a.mean_bits_per_step == b.mean_bits_per_step);
    CHECK(a.std_error == b.std_error);

    const MonteCarloResult c = monte_carlo_step_energy(gen_lbb(), 10000, 200, 42);
    const double target = (1.0 + std::log2(3.0)) / 2;
    CHECK(std::abs(c.mean_bits_per_step - target) <= 3 * c.std_error);
}
