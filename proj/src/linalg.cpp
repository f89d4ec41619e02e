#include "aec/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace aec {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = std::conj(m.at(i, j));
    return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: dimension mismatch");
    ComplexMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int l = 0; l < a.cols; ++l) {
            const Complex v = a.at(i, l);
            if (v == Complex{}) continue;
            for (int j = 0; j < b.cols; ++j) out.at(i, j) += v * b.at(l, j);
        }
    return out;
}

CVector apply_matrix(const ComplexMatrix& m, const CVector& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw std::invalid_argument("apply: dimension mismatch");
    CVector out(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        Complex acc{};
        for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (const Complex& c : m.a) sum += std::norm(c);
    return std::sqrt(sum);
}

double vector_norm(const CVector& v) {
    double sum = 0.0;
    for (const Complex& c : v) sum += std::norm(c);
    return std::sqrt(sum);
}

Complex inner(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

std::vector<CVector> orthonormalize(const std::vector<CVector>& candidates, double drop_tol) {
    std::vector<CVector> basis;
    for (const CVector& cand : candidates) {
        CVector v = cand;
        for (int pass = 0; pass < 2; ++pass) {
            for (const CVector& b : basis) {
                const Complex c = inner(b, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
            }
        }
        const double norm = vector_norm(v);
        if (norm <= drop_tol) continue;
        for (Complex& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    return basis;
}

ComplexMatrix unitary_with_first_column(const CVector& column) {
    const int n = static_cast<int>(column.size());
    if (std::abs(vector_norm(column) - 1.0) > 1e-9)
        throw std::invalid_argument("unitary_with_first_column: column is not unit norm");
    std::vector<CVector> candidates;
    candidates.push_back(column);
    for (int i = 0; i < n; ++i) {
        CVector e(n);
        e[i] = 1.0;
        candidates.push_back(std::move(e));
    }
    const std::vector<CVector> basis = orthonormalize(candidates);
    if (static_cast<int>(basis.size()) != n)
        throw std::invalid_argument("unitary_with_first_column: completion failed");
    ComplexMatrix u(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) u.at(i, j) = basis[j][i];
    return u;
}

ComplexMatrix projector(const std::vector<CVector>& basis, int dim) {
    ComplexMatrix p(dim, dim);
    for (const CVector& b : basis)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) p.at(i, j) += b[i] * std::conj(b[j]);
    return p;
}

} // namespace aec
