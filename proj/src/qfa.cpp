#include "aec/qfa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aec/error.hpp"
#include "aec/languages.hpp"

namespace aec {

namespace {

ComplexMatrix zero_matrix(int n) { return ComplexMatrix(n, n); }

CVector basis_vector(int n, int i) {
    CVector v(n);
    v[i] = 1.0;
    return v;
}

double accepting_mass(const Qfa& m, const ComplexMatrix& rho) {
    double p = 0.0;
    for (int q = 0; q < m.n; ++q)
        if (m.accepting[q]) p += rho.at(q, q).real();
    return p;
}

double clamp_probability(double p) { return std::min(1.0, std::max(0.0, p)); }

} // namespace

ComplexMatrix apply_superoperator(const Superoperator& op, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.rows, rho.cols);
    for (const ComplexMatrix& e : op.elements) {
        ComplexMatrix t = multiply(multiply(e, rho), adjoint(e));
        for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += t.a[i];
    }
    return out;
}

ComplexMatrix initial_density(const Qfa& m) {
    ComplexMatrix rho(m.n, m.n);
    rho.at(m.start, m.start) = 1.0;
    return apply_superoperator(m.endmarker_op, rho);
}

double completeness_residual(const Superoperator& op) {
    if (op.elements.empty()) return 1.0;
    const int n = op.elements[0].rows;
    ComplexMatrix sum(n, n);
    for (const ComplexMatrix& e : op.elements) {
        ComplexMatrix t = multiply(adjoint(e), e);
        for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += t.a[i];
    }
    for (int i = 0; i < n; ++i) sum.at(i, i) -= 1.0;
    return frobenius_norm(sum);
}

void validate_qfa(const Qfa& m) {
    if (m.n < 1) throw ValidationError("qfa: state count must be positive");
    if (m.start < 0 || m.start >= m.n) throw ValidationError("qfa: start state out of range");
    if (m.accepting.size() != static_cast<std::size_t>(m.n))
        throw ValidationError("qfa: accepting mask has wrong size");
    if (m.alphabet.size() < 1) throw ValidationError("qfa: empty alphabet");
    if (m.symbol_ops.size() != static_cast<std::size_t>(m.alphabet.size()))
        throw ValidationError("qfa: superoperator count does not match alphabet");

    const int l = m.endmarker_op.element_count();
    if (l < 1) throw ValidationError("qfa: endmarker superoperator has no elements");

    auto check_shape = [&](const Superoperator& op, const std::string& name) {
        if (op.element_count() != l)
            throw ValidationError("qfa: superoperator for symbol '" + name + "' has " +
                                  std::to_string(op.element_count()) + " elements, expected " +
                                  std::to_string(l));
        for (const ComplexMatrix& e : op.elements) {
            if (e.rows != m.n || e.cols != m.n)
                throw ValidationError("qfa: operation element for symbol '" + name +
                                      "' is not " + std::to_string(m.n) + "x" +
                                      std::to_string(m.n));
            for (const Complex& c : e.a)
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                    throw ValidationError("qfa: non-finite entry in superoperator for symbol '" +
                                          name + "'");
        }
        double residual = completeness_residual(op);
        if (residual > 1e-9)
            throw ValidationError("qfa: completeness violation for symbol '" + name +
                                  "': residual " + std::to_string(residual));
    };
    check_shape(m.endmarker_op, kEndmarker);
    for (int s = 0; s < m.alphabet.size(); ++s) check_shape(m.symbol_ops[s], m.alphabet.symbol(s));
}

Qfa from_dfa(const Dfa& d) {
    const int k = d.alphabet.size();
    const InDegreeProfile chi = in_degree_profile(d);
    const int l = std::max(1, chi.max());

    Qfa m;
    m.n = d.state_count;
    m.alphabet = d.alphabet;
    m.start = d.start;
    m.accepting = d.accepting;
    m.symbol_ops.resize(k);
    for (int s = 0; s < k; ++s) {
        m.symbol_ops[s].elements.assign(l, zero_matrix(d.state_count));
        std::vector<int> used(d.state_count, 0); // sources already wired per target
        for (int q = 0; q < d.state_count; ++q) {
            int t = d.next(q, s);
            m.symbol_ops[s].elements[used[t]].at(t, q) = 1.0;
            ++used[t];
        }
    }
    m.endmarker_op.elements.assign(l, zero_matrix(d.state_count));
    m.endmarker_op.elements[0] = ComplexMatrix::identity(d.state_count);
    return m;
}

double accept_prob(const Qfa& m, const Word& w) {
    ComplexMatrix rho = initial_density(m);
    for (int s : w) {
        if (s < 0 || s >= m.alphabet.size()) throw ParseError("unknown symbol index in word");
        rho = apply_superoperator(m.op(s), rho);
    }
    return clamp_probability(accepting_mass(m, rho));
}

double Ensemble::total_probability() const {
    double p = 0.0;
    for (const auto& [prob, state] : branches) p += prob;
    return p;
}

Ensemble branch_run(const Qfa& m, const Word& w, std::size_t branch_cap) {
    Ensemble current;
    current.branches.emplace_back(1.0, basis_vector(m.n, m.start));

    auto step = [&](const Superoperator& op) {
        Ensemble next;
        for (const auto& [prob, state] : current.branches) {
            for (const ComplexMatrix& e : op.elements) {
                CVector image = apply_matrix(e, state);
                double mass = 0.0;
                for (const Complex& c : image) mass += std::norm(c);
                if (mass <= 1e-14) continue; // zero image, never realized
                const double scale = 1.0 / std::sqrt(mass);
                for (Complex& c : image) c *= scale;
                next.branches.emplace_back(prob * mass, std::move(image));
            }
        }
        if (next.branches.size() > branch_cap)
            throw ValidationError("branch_run: branch count " +
                                  std::to_string(next.branches.size()) + " exceeds cap " +
                                  std::to_string(branch_cap));
        current = std::move(next);
    };

    step(m.endmarker_op);
    for (int s : w) {
        if (s < 0 || s >= m.alphabet.size()) throw ParseError("unknown symbol index in word");
        step(m.op(s));
    }
    return current;
}

double ensemble_accept_mass(const Qfa& m, const Ensemble& e) {
    double p = 0.0;
    for (const auto& [prob, state] : e.branches) {
        double mass = 0.0;
        for (int q = 0; q < m.n; ++q)
            if (m.accepting[q]) mass += std::norm(state[q]);
        p += prob * mass;
    }
    return p;
}

ZeroErrorResult is_zero_error(const Qfa& m, int n_max) {
    if (n_max < 0) throw std::invalid_argument("is_zero_error: n_max must be >= 0");
    const int k = m.alphabet.size();

    // iterative deepening keeps the first witness in length-then-lex order
    for (int len = 0; len <= n_max; ++len) {
        Word word;
        std::optional<Word> witness;
        auto dfs = [&](auto&& self, const ComplexMatrix& rho, int remaining) -> bool {
            if (remaining == 0) {
                const double p = clamp_probability(accepting_mass(m, rho));
                if (std::min(p, 1.0 - p) > 1e-7) {
                    witness = word;
                    return true;
                }
                return false;
            }
            for (int s = 0; s < k; ++s) {
                word.push_back(s);
                if (self(self, apply_superoperator(m.op(s), rho), remaining - 1)) return true;
                word.pop_back();
            }
            return false;
        };
        if (dfs(dfs, initial_density(m), len)) return {false, std::move(witness)};
    }
    return {true, std::nullopt};
}

double max_error(const Qfa& m, const std::function<bool(const Word&)>& member, int n_max) {
    if (n_max < 0) throw std::invalid_argument("max_error: n_max must be >= 0");
    const int k = m.alphabet.size();
    double worst = 0.0;
    Word word;
    auto dfs = [&](auto&& self, const ComplexMatrix& rho, int remaining) -> void {
        const double p = clamp_probability(accepting_mass(m, rho));
        worst = std::max(worst, member(word) ? 1.0 - p : p);
        if (remaining == 0) return;
        for (int s = 0; s < k; ++s) {
            word.push_back(s);
            self(self, apply_superoperator(m.op(s), rho), remaining - 1);
            word.pop_back();
        }
    };
    dfs(dfs, initial_density(m), n_max);
    return worst;
}

namespace {

// Overwrites the endmarker with a single unitary whose column `start` is the
// given superposition; the remaining elements stay zero so l is unchanged.
void set_branching_endmarker(Qfa& m, const CVector& superposition) {
    const int l = m.element_count();
    m.endmarker_op.elements.assign(l, zero_matrix(m.n));
    ComplexMatrix u = unitary_with_first_column(superposition);
    if (m.start != 0) {
        // move the superposition into the start column
        for (int i = 0; i < m.n; ++i) std::swap(u.at(i, 0), u.at(i, m.start));
    }
    m.endmarker_op.elements[0] = std::move(u);
}

} // namespace

Qfa gen_m2() {
    // states 0..9: 0 = pre-endmarker start; 1..4 ends-with-s1s2 submachine;
    // 5..8 ends-with-s2s1 submachine; 9 = always-accept
    Dfa base;
    base.alphabet = Alphabet::indexed(2);
    base.state_count = 10;
    base.start = 0;
    base.accepting = {0, 0, 0, 1, 0, 0, 0, 1, 0, 1};
    //            s1 s2
    base.delta = {0, 0,
                  2, 1,  // 1: waiting
                  2, 3,  // 2: saw s1
                  4, 1,  // 3: saw s1 s2 (accept)
                  4, 3,  // 4: saw s1 after accepting
                  5, 6,  // 5: waiting
                  7, 6,  // 6: saw s2
                  5, 8,  // 7: saw s2 s1 (accept)
                  7, 8}; // 8: saw s2 after accepting
    base.delta.push_back(9);
    base.delta.push_back(9);

    Qfa m = from_dfa(base); // two elements: every in-degree is at most 2
    const double amp = 1.0 / std::sqrt(3.0);
    CVector superposition(10);
    superposition[1] = amp;
    superposition[5] = amp;
    superposition[9] = amp;
    set_branching_endmarker(m, superposition);
    return m;
}

Qfa gen_mj(int j) {
    if (j < 3) throw std::invalid_argument("gen_mj: j must be >= 3");
    const int n = 3 * j + 2;
    const int always_accept = 3 * j + 1;

    Dfa base;
    base.alphabet = Alphabet::indexed(j);
    base.state_count = n;
    base.start = 0;
    base.accepting.assign(n, 0);
    base.accepting[always_accept] = 1;
    base.delta.assign(static_cast<std::size_t>(n) * j, -1);
    auto set = [&](int q, int t, int target) {
        base.delta[static_cast<std::size_t>(q) * j + t] = target;
    };
    for (int t = 0; t < j; ++t) {
        set(0, t, 0);
        set(always_accept, t, always_accept);
    }
    for (int i = 1; i <= j; ++i) {
        const int one = 3 * (i - 1) + 1, two = one + 1, three = one + 2;
        base.accepting[three] = 1;
        const int succ = lj_successor(i, j);
        for (int t = 0; t < j; ++t) {
            const int sym = t + 1;
            set(one, t, sym == i ? two : one);
            set(two, t, sym == i ? two : (sym == succ ? three : one));
            set(three, t, sym == i ? two : one);
        }
    }

    Qfa m = from_dfa(base); // three elements per superoperator
    const double denom = std::sqrt(2.0 * j - 1.0);
    CVector superposition(n);
    for (int i = 1; i <= j; ++i) superposition[3 * (i - 1) + 1] = 1.0 / denom;
    superposition[always_accept] = std::sqrt(static_cast<double>(j - 1)) / denom;
    set_branching_endmarker(m, superposition);
    return m;
}

double step_energy(const Qfa& m) {
    return std::log2(static_cast<double>(m.element_count()));
}

} // namespace aec
