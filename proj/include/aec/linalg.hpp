// linalg.hpp -- dense complex matrices and the orthonormalization helpers the
// QFA engine needs.  Machines here have a handful of states, so everything is
// straightforward O(n^3) dense arithmetic.

#pragma once

#include <complex>
#include <vector>

namespace aec {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> a; // row-major

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Complex& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Complex& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static ComplexMatrix identity(int n);
};

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
CVector apply_matrix(const ComplexMatrix& m, const CVector& v);

double frobenius_norm(const ComplexMatrix& m);
double vector_norm(const CVector& v);
Complex inner(const CVector& a, const CVector& b); // conjugate-linear in a

// Modified Gram-Schmidt with one re-orthogonalization pass; candidates whose
// residual norm falls below drop_tol are discarded as dependent.
std::vector<CVector> orthonormalize(const std::vector<CVector>& candidates,
                                    double drop_tol = 1e-10);

// Extends a unit vector to a full orthonormal basis and returns the unitary
// whose column 0 is that vector (remaining columns drawn deterministically
// from the standard basis).
ComplexMatrix unitary_with_first_column(const CVector& column);

// Orthogonal projector sum_i b_i b_i^dagger onto the span of an orthonormal
// basis.
ComplexMatrix projector(const std::vector<CVector>& basis, int dim);

} // namespace aec
