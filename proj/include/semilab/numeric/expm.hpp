#pragma once

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::numeric {

/// exp(t*A) by scaling-and-squaring with the degree-13 Pade approximant.
ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t);

} // namespace semilab::numeric
