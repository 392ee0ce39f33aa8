#pragma once

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::numeric {

/// Singular values, descending. Householder bidiagonalization (complex) then
/// implicit-shift QR on the real bidiagonal form; no singular vectors are
/// accumulated.
rvec singular_values(const ComplexMatrix& a);

/// Largest singular value (0 for an empty matrix).
double operator_norm(const ComplexMatrix& a);

} // namespace semilab::numeric
