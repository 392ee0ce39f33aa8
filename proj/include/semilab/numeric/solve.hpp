#pragma once

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::numeric {

/// Solve A X = B by LU with partial pivoting. A pivot whose magnitude falls
/// below 1e-13 * ||A||_inf raises SingularMatrix.
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b);

cvec solve_linear(const ComplexMatrix& a, const cvec& b);

} // namespace semilab::numeric
