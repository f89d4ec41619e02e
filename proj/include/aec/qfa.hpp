// qfa.hpp -- general quantum finite automata: one superoperator per symbol
// (plus the left endmarker), an auxiliary-system measurement after every
// symbol, and a final computational-basis measurement.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aec/alphabet.hpp"
#include "aec/dfa.hpp"
#include "aec/linalg.hpp"

namespace aec {

// l operation elements E_1..E_l, each n x n, satisfying sum E^dag E = I.
struct Superoperator {
    std::vector<ComplexMatrix> elements;

    int element_count() const { return static_cast<int>(elements.size()); }
};

// Residual ||sum E^dag E - I||_F.
double completeness_residual(const Superoperator& op);

struct Qfa {
    int n = 0; // machine states
    Alphabet alphabet;
    std::vector<Superoperator> symbol_ops; // one per alphabet symbol
    Superoperator endmarker_op;            // consumed once, before the input
    int start = 0;
    std::vector<std::uint8_t> accepting;

    const Superoperator& op(int symbol) const { return symbol_ops[symbol]; }
    int element_count() const { return endmarker_op.element_count(); }
};

// Structural checks plus per-symbol completeness within 1e-9; the error names
// the offending symbol and its residual.
void validate_qfa(const Qfa& m);

// rho <- sum_j E_j rho E_j^dagger.
ComplexMatrix apply_superoperator(const Superoperator& op, const ComplexMatrix& rho);

// The density operator right after the endmarker is consumed.
ComplexMatrix initial_density(const Qfa& m);

// Zero-error simulation of a DFA: l = max same-symbol in-degree, element k of
// each symbol carries the transitions whose source is the k-th (ascending)
// one entering its target; the endmarker is the identity in element 1.
Qfa from_dfa(const Dfa& d);

// Probability that the final measurement accepts after processing "^" + w,
// by density-operator evolution rho <- sum_j E rho E^dag; clamped to [0, 1].
double accept_prob(const Qfa& m, const Word& w);

// One pure branch of the evolution: probability and unit state vector.
struct Ensemble {
    std::vector<std::pair<double, CVector>> branches;

    double total_probability() const;
};

// Explicit branch tree: per symbol every branch splits into its nonzero
// element images.  Throws ValidationError when the branch count exceeds cap.
Ensemble branch_run(const Qfa& m, const Word& w, std::size_t branch_cap = 100000);

// Acceptance mass of an ensemble; agrees with accept_prob within 1e-9.
double ensemble_accept_mass(const Qfa& m, const Ensemble& e);

struct ZeroErrorResult {
    bool zero_error = false;
    std::optional<Word> witness; // first word (length-lex order) with p outside {0,1}
};

// Checks accept_prob in {0, 1} within 1e-7 for all words up to n_max.
ZeroErrorResult is_zero_error(const Qfa& m, int n_max);

// max over |w| <= n_max of (1 - p) on members and p on non-members.
double max_error(const Qfa& m, const std::function<bool(const Word&)>& member, int n_max);

// The 10-state machine recognizing L_2 with error 1/3 using two operation
// elements: the endmarker splits amplitude 1/sqrt(3) across two ending-pair
// submachines and one always-accept state.
Qfa gen_m2();

// For j >= 3: j three-state ending-pair submachines plus one always-accept
// state, three operation elements, error bounded by (j-1)/(2j-1).  The
// endmarker sends 1/sqrt(2j-1) to each submachine start and
// sqrt(j-1)/sqrt(2j-1) to the always-accept state.
Qfa gen_mj(int j);

struct ExtractOptions {
    int verify_len = 6;                  // cross-check words up to this length
    std::size_t verify_word_cap = 20000; // stop the cross-check beyond this many words
};

// Zero-error QFA -> DFA by subspace closure: nodes are the orthogonal
// subspaces spanned by attainable vectors (one per indistinguishability
// class), each expanded into dim(S) equivalent states with incoming
// transitions distributed round-robin, so the same-symbol in-degree never
// exceeds the element count.  Throws ValidationError on mixed subspaces
// ("not zero-error") or when the closure escapes its n-dimension budget.
Dfa extract_dfa(const Qfa& m, const ExtractOptions& options = {});

// log2(element count): the bits overwritten in the auxiliary state per step.
double step_energy(const Qfa& m);

} // namespace aec
