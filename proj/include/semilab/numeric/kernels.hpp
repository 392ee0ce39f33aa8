#pragma once

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::numeric {

// Dense kernels. `multiply` runs the inner loops under OpenMP when the
// problem is large enough; `multiply_serial` is the reference implementation
// kept for testing and benchmarking. Both compute each output entry with the
// same scalar recurrence, so results agree bitwise independent of thread
// count.

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

cvec apply(const ComplexMatrix& a, const cvec& x);
/// y^T = r^T A  (row functional composed with A).
cvec apply_left(const cvec& r, const ComplexMatrix& a);

cplx dot(const cvec& a, const cvec& b);          // conjugate-linear in first slot
double norm2(const cvec& x);
double frobenius_norm(const ComplexMatrix& a);
double inf_norm(const ComplexMatrix& a);         // max row sum
double one_norm(const ComplexMatrix& a);         // max column sum
double max_abs(const ComplexMatrix& a);

ComplexMatrix outer(const cvec& col, const cvec& row);

bool is_diagonal(const ComplexMatrix& a);

} // namespace semilab::numeric
