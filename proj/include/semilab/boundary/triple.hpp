#pragma once

#include <string>

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::boundary {

using numeric::ComplexMatrix;
using numeric::cplx;
using numeric::cvec;
using numeric::rvec;

/// Discretized boundary system (A_m, G, M, P) on [0, pi].
///
/// Grid nodes x_j = j*h, j = 0..n with h = pi/(n+1); the node at x = pi is
/// absorbed into the grid space (functions vanish there). Node 0 carries the
/// boundary trace; nodes 1..n are the interior state space X. Am acts on all
/// grid values; G and M are row functionals on grid values. P observes the
/// interior state.
struct BoundaryTriple {
    std::size_t n = 0;        // interior grid size
    double h = 0.0;           // spacing pi/(n+1)
    rvec grid;                // node coordinates, size n+1
    ComplexMatrix Am;         // (n+1) x (n+1)
    cvec G;                   // trace row, size n+1
    cvec M;                   // observation row, size n+1
    ComplexMatrix P;          // n x n interior observation
    std::string scheme;       // discretization id

    /// Elimination row l for a constraint row r (r.f = 0  =>  f_0 = l.f_int).
    cvec elimination_row(const cvec& row) const;

    /// Full grid vector from interior values under constraint row r.f = 0.
    cvec lift_interior(const cvec& x, const cvec& elim) const;

    /// Full grid vector of an interior state with boundary data G.f = u.
    cvec lift_with_boundary_data(const cvec& x, cplx u) const;

    /// Row functional applied to a full grid vector.
    cplx apply_row(const cvec& row, const cvec& full) const;
};

/// Second-order finite-difference heat triple: Am f = f'' with f(pi) = 0
/// built into the grid space, G f = f'(0) (one-sided, second order),
/// M f = -f(0), P = 0.1 I.
BoundaryTriple build_heat_triple(std::size_t n);

std::string triple_to_json(const BoundaryTriple& t);
BoundaryTriple triple_from_json(const std::string& text);

} // namespace semilab::boundary
