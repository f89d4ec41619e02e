// Zero-error QFA -> DFA extraction by subspace closure.
//
// Vectors attained after reading words of the same indistinguishability class
// span one subspace, and subspaces of different classes are orthogonal.  The
// closure therefore grows nodes of pairwise-orthogonal subspaces: an image
// span that overlaps an existing node belongs to that node's class and is
// merged into it; an image span orthogonal to every node opens a new class.
// The machine is not zero-error exactly when a node mixes accepting and
// rejecting coordinates, or when the closure escapes its n-dimension budget.

#include <algorithm>
#include <cmath>
#include <string>

#include "aec/error.hpp"
#include "aec/qfa.hpp"

namespace aec {

namespace {

constexpr double kOverlapTol = 1e-6; // projector-product Frobenius threshold
constexpr double kClassifyTol = 1e-7;
constexpr double kDropTol = 1e-10;

struct Node {
    std::vector<CVector> basis;
    bool alive = true;
};

// ||P_a . P_b||_F for the projectors of two orthonormal bases reduces to the
// Frobenius norm of the matrix of pairwise inner products.
double overlap(const std::vector<CVector>& a, const std::vector<CVector>& b) {
    double sum = 0.0;
    for (const CVector& u : a)
        for (const CVector& v : b) sum += std::norm(inner(u, v));
    return std::sqrt(sum);
}

std::vector<CVector> image_span(const Superoperator& op, const std::vector<CVector>& basis) {
    std::vector<CVector> images;
    for (const CVector& v : basis)
        for (const ComplexMatrix& e : op.elements) images.push_back(apply_matrix(e, v));
    return orthonormalize(images, kDropTol);
}

} // namespace

Dfa extract_dfa(const Qfa& m, const ExtractOptions& options) {
    validate_qfa(m);
    const int k = m.alphabet.size();

    std::vector<Node> nodes;
    auto total_dim = [&] {
        std::size_t dim = 0;
        for (const Node& node : nodes)
            if (node.alive) dim += node.basis.size();
        return dim;
    };
    auto budget_check = [&] {
        if (total_dim() > static_cast<std::size_t>(m.n))
            throw ValidationError("extract_dfa: closure exceeds " + std::to_string(m.n) +
                                  " dimensions; subspaces are not orthogonal within tolerance");
    };

    // Places a span: merge into the overlapping class (uniting classes the
    // span bridges) or open a new node.  Returns whether anything changed.
    auto absorb = [&](std::vector<CVector> span) -> bool {
        std::vector<int> hits;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i].alive && overlap(nodes[i].basis, span) > kOverlapTol)
                hits.push_back(i);
        if (hits.empty()) {
            nodes.push_back({std::move(span), true});
            budget_check();
            return true;
        }
        Node& home = nodes[hits[0]];
        std::vector<CVector> combined = home.basis;
        for (std::size_t h = 1; h < hits.size(); ++h) {
            for (CVector& v : nodes[hits[h]].basis) combined.push_back(std::move(v));
            nodes[hits[h]].alive = false;
        }
        for (CVector& v : span) combined.push_back(std::move(v));
        combined = orthonormalize(combined, kDropTol);
        const bool changed = hits.size() > 1 || combined.size() != home.basis.size();
        home.basis = std::move(combined);
        budget_check();
        return changed;
    };

    {
        CVector start(m.n);
        start[m.start] = 1.0;
        std::vector<CVector> initial;
        for (const ComplexMatrix& e : m.endmarker_op.elements) initial.push_back(apply_matrix(e, start));
        absorb(orthonormalize(initial, kDropTol));
    }

    // Grow to a fixpoint.  Every pass either leaves the node set untouched or
    // strictly raises (total dimension, -node count), which is bounded.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!nodes[i].alive) continue;
            for (int s = 0; s < k; ++s) {
                std::vector<CVector> span = image_span(m.op(s), nodes[i].basis);
                if (absorb(std::move(span))) changed = true;
                if (!nodes[i].alive) break; // this node was just merged away
            }
        }
    }

    std::vector<std::vector<CVector>> classes;
    for (Node& node : nodes)
        if (node.alive) classes.push_back(std::move(node.basis));
    const int class_count = static_cast<int>(classes.size());

    // transitions between classes; the image of a class under a symbol must
    // sit inside exactly one class
    std::vector<std::vector<int>> target(class_count, std::vector<int>(k, -1));
    for (int i = 0; i < class_count; ++i) {
        for (int s = 0; s < k; ++s) {
            std::vector<CVector> span = image_span(m.op(s), classes[i]);
            int hit = -1;
            for (int t = 0; t < class_count; ++t) {
                if (overlap(classes[t], span) <= kOverlapTol) continue;
                if (hit >= 0)
                    throw ValidationError("extract_dfa: not zero-error: image of a class "
                                          "straddles two classes");
                hit = t;
            }
            if (hit < 0)
                throw ValidationError("extract_dfa: transition image matches no class");
            // containment within tolerance: residual after projecting away
            for (const CVector& v : span) {
                CVector residual = v;
                for (const CVector& b : classes[hit]) {
                    const Complex c = inner(b, v);
                    for (std::size_t x = 0; x < residual.size(); ++x) residual[x] -= c * b[x];
                }
                if (vector_norm(residual) > kOverlapTol)
                    throw ValidationError("extract_dfa: transition image escapes its class "
                                          "subspace; machine is not zero-error within tolerance");
            }
            target[i][s] = hit;
        }
    }

    // classify: the rejecting-coordinate projector must annihilate accepting
    // classes and vice versa
    int start_class = -1;
    {
        CVector start(m.n);
        start[m.start] = 1.0;
        std::vector<CVector> initial;
        for (const ComplexMatrix& e : m.endmarker_op.elements) initial.push_back(apply_matrix(e, start));
        initial = orthonormalize(initial, kDropTol);
        for (int i = 0; i < class_count; ++i)
            if (overlap(classes[i], initial) > kOverlapTol) start_class = i;
    }
    if (start_class < 0) throw ValidationError("extract_dfa: lost the initial class");

    std::vector<std::uint8_t> class_accepting(class_count, 0);
    for (int i = 0; i < class_count; ++i) {
        double acc = 0.0, rej = 0.0;
        for (const CVector& v : classes[i]) {
            for (int q = 0; q < m.n; ++q) {
                if (m.accepting[q])
                    acc += std::norm(v[q]);
                else
                    rej += std::norm(v[q]);
            }
        }
        acc = std::sqrt(acc);
        rej = std::sqrt(rej);
        if (rej <= kClassifyTol)
            class_accepting[i] = 1;
        else if (acc > kClassifyTol)
            throw ValidationError("extract_dfa: not zero-error: mixed subspace (accepting "
                                  "residual " + std::to_string(acc) + ", rejecting residual " +
                                  std::to_string(rej) + ")");
    }

    // expand each class into dim(S) equivalent states; round-robin the
    // incoming transitions so no state exceeds ceil(T / dim) per symbol
    std::vector<int> offset(class_count + 1, 0);
    for (int i = 0; i < class_count; ++i)
        offset[i + 1] = offset[i] + static_cast<int>(classes[i].size());

    Dfa out;
    out.alphabet = m.alphabet;
    out.state_count = offset[class_count];
    out.start = offset[start_class]; // copy 0 of the initial class's bag
    out.accepting.assign(out.state_count, 0);
    out.delta.assign(static_cast<std::size_t>(out.state_count) * k, -1);
    for (int i = 0; i < class_count; ++i)
        for (int copy = 0; copy < static_cast<int>(classes[i].size()); ++copy)
            out.accepting[offset[i] + copy] = class_accepting[i];
    for (int tgt = 0; tgt < class_count; ++tgt) {
        const int mu = static_cast<int>(classes[tgt].size());
        for (int s = 0; s < k; ++s) {
            long long counter = 0;
            for (int src = 0; src < class_count; ++src) {
                if (target[src][s] != tgt) continue;
                for (int copy = 0; copy < static_cast<int>(classes[src].size()); ++copy) {
                    out.delta[static_cast<std::size_t>(offset[src] + copy) * k + s] =
                        offset[tgt] + static_cast<int>(counter % mu);
                    ++counter;
                }
            }
        }
    }

    // cross-check the extracted machine against the quantum one on all words
    // up to the configured length (or until the word cap)
    {
        std::size_t words = 0;
        std::size_t depth = 0;
        auto dfs = [&](auto&& self, const ComplexMatrix& rho, int dfa_state, int remaining)
            -> void {
            if (words >= options.verify_word_cap) return;
            ++words;
            double p = 0.0;
            for (int q = 0; q < m.n; ++q)
                if (m.accepting[q]) p += rho.at(q, q).real();
            const bool dfa_accepts = out.accepting[dfa_state] != 0;
            if (std::abs(p - (dfa_accepts ? 1.0 : 0.0)) > 1e-6)
                throw ValidationError(
                    "extract_dfa: not zero-error: acceptance probability " + std::to_string(p) +
                    " on a word of length " + std::to_string(depth));
            if (remaining == 0) return;
            ++depth;
            for (int s = 0; s < k; ++s)
                self(self, apply_superoperator(m.op(s), rho), out.next(dfa_state, s),
                     remaining - 1);
            --depth;
        };
        dfs(dfs, initial_density(m), out.start, options.verify_len);
    }

    return out;
}

} // namespace aec
