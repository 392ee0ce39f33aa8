#pragma once

#include <string>

#include "semilab/boundary/triple.hpp"

namespace semilab::boundary {

/// Square operator with the boundary constraint eliminated.
///
/// `matrix` holds a Hermitian representative obtained by a diagonal
/// similarity (`scale`) of the raw eliminated operator; the similarity
/// preserves the spectrum exactly, so spectral quantities read off `matrix`
/// are those of the eliminated operator. `node_matrix()` returns the operator
/// in plain grid-value coordinates for formulas that mix several generators.
/// At matrix scale the extrapolation space X_{-1} is identified with X, so
/// the matrix is simultaneously the generator and its extension.
struct Generator {
    ComplexMatrix matrix;
    rvec scale;              // node_matrix = D^{-1} matrix D with D = diag(scale)
    double growth_bound = 0.0;
    std::string label;
    bool hermitian = true;

    ComplexMatrix node_matrix() const;
    cvec to_matrix_coords(const cvec& node_vec) const;
    cvec from_matrix_coords(const cvec& matrix_vec) const;
};

/// A = Am on ker G: boundary node eliminated through G, then symmetrized by
/// the spectrum-preserving diagonal similarity.
Generator restrict_generator(const BoundaryTriple& triple);

/// A^cl = Am on ker(G - M); label records the boundary feedback.
Generator perturbed_generator(const BoundaryTriple& triple);

/// Generator wrapper for an explicitly given matrix (identity scale). The
/// growth bound comes from the spectrum when the matrix is Hermitian or
/// diagonal, otherwise from a power-method estimate on exp(A).
Generator make_generator(ComplexMatrix matrix, std::string label);

/// Eigenvalues of restrict_generator(triple), ascending.
rvec openloop_spectrum(const BoundaryTriple& triple);

} // namespace semilab::boundary
