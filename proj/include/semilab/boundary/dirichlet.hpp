#pragma once

#include "semilab/boundary/generator.hpp"
#include "semilab/boundary/triple.hpp"

namespace semilab::boundary {

/// Lifting D_lambda applied to the unit boundary datum, together with the
/// induced control column B = (lambda - A) D_lambda 1 (lambda-independent).
struct DirichletOperator {
    cplx lambda;
    cvec lift;   // grid values, size n+1
    cvec B;      // interior column, size n, in node coordinates
};

/// Scalar feedback test at lambda: m = M D_lambda 1 and the flag
/// |1 - m| > 1e-8 deciding whether lambda stays in the perturbed resolvent
/// set.
struct SpectrumCondition {
    cplx m;
    bool lambda_in_perturbed_resolvent = false;
};

/// Solves the bordered system (lambda - Am) d = 0 on interior rows, G d = 1.
/// Pre: lambda at distance > 1e-6 from the open-loop spectrum.
DirichletOperator dirichlet_operator(const BoundaryTriple& triple, cplx lambda);
DirichletOperator dirichlet_operator(const BoundaryTriple& triple, cplx lambda,
                                     const rvec& openloop_eigenvalues);

SpectrumCondition spectrum_condition(const BoundaryTriple& triple, cplx lambda);
SpectrumCondition spectrum_condition(const BoundaryTriple& triple, cplx lambda,
                                     const rvec& openloop_eigenvalues);

/// R(lambda, A^cl) assembled as (I - D_lambda M)^{-1} R(lambda, A) on the
/// grid space, returned in the perturbed generator's Hermitian coordinates
/// (directly comparable with solve_linear(lambda - perturbed.matrix, I)).
ComplexMatrix perturbed_resolvent(const BoundaryTriple& triple, cplx lambda);

/// Same assembly in plain node coordinates (used when mixing with the
/// open-loop resolvent).
ComplexMatrix perturbed_resolvent_node(const BoundaryTriple& triple, cplx lambda);

} // namespace semilab::boundary
