#pragma once

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::numeric {

/// Eigen-decomposition of a Hermitian matrix: A = V diag(values) V*.
/// Eigenvalues ascending, eigenvector columns orthonormal.
struct SpectralDecomposition {
    rvec eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Householder tridiagonalization followed by implicit-shift QL on the real
/// symmetric tridiagonal form. Input must satisfy ||A - A*|| <= 1e-10 ||A||.
SpectralDecomposition eig_hermitian(const ComplexMatrix& a);

} // namespace semilab::numeric
