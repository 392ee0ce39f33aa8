#include "semilab/boundary/dirichlet.hpp"

#include <cmath>

#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"

namespace semilab::boundary {

using numeric::apply;
using numeric::apply_left;
using numeric::solve_linear;

namespace {

constexpr double kSpectrumDistance = 1e-6;

void check_in_resolvent_set(cplx lambda, const rvec& eigs) {
    for (double ev : eigs) {
        if (std::abs(lambda - ev) <= kSpectrumDistance) {
            throw LambdaInSpectrum("lambda within 1e-6 of an open-loop eigenvalue");
        }
    }
}

} // namespace

DirichletOperator dirichlet_operator(const BoundaryTriple& triple, cplx lambda,
                                     const rvec& openloop_eigenvalues) {
    check_in_resolvent_set(lambda, openloop_eigenvalues);
    const std::size_t n = triple.n;

    ComplexMatrix bordered(n + 1, n + 1);
    for (std::size_t j = 0; j <= n; ++j) bordered(0, j) = triple.G[j];
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            bordered(i, j) = (i == j ? lambda : cplx{0.0, 0.0}) - triple.Am(i, j);
        }
    }
    cvec rhs(n + 1, cplx{0.0, 0.0});
    rhs[0] = 1.0;

    DirichletOperator d;
    d.lambda = lambda;
    d.lift = solve_linear(bordered, rhs);

    // B = (lambda - A) d_int with A the G-eliminated interior operator.
    const cvec elim = triple.elimination_row(triple.G);
    cvec dint(d.lift.begin() + 1, d.lift.end());
    const cvec full = triple.lift_interior(dint, elim);
    d.B.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx am_row{0.0, 0.0};
        for (std::size_t j = 0; j <= n; ++j) am_row += triple.Am(i + 1, j) * full[j];
        d.B[i] = lambda * dint[i] - am_row;
    }
    return d;
}

DirichletOperator dirichlet_operator(const BoundaryTriple& triple, cplx lambda) {
    return dirichlet_operator(triple, lambda, openloop_spectrum(triple));
}

SpectrumCondition spectrum_condition(const BoundaryTriple& triple, cplx lambda,
                                     const rvec& openloop_eigenvalues) {
    const DirichletOperator d = dirichlet_operator(triple, lambda, openloop_eigenvalues);
    SpectrumCondition sc;
    sc.m = triple.apply_row(triple.M, d.lift);
    sc.lambda_in_perturbed_resolvent = std::abs(1.0 - sc.m) > 1e-8;
    return sc;
}

SpectrumCondition spectrum_condition(const BoundaryTriple& triple, cplx lambda) {
    return spectrum_condition(triple, lambda, openloop_spectrum(triple));
}

ComplexMatrix perturbed_resolvent_node(const BoundaryTriple& triple, cplx lambda) {
    const Generator open = restrict_generator(triple);
    const rvec eigs = numeric::eig_hermitian(open.matrix).eigenvalues;
    const DirichletOperator d = dirichlet_operator(triple, lambda, eigs);
    const cplx ms = triple.apply_row(triple.M, d.lift);
    if (!(std::abs(1.0 - ms) > 1e-8)) {
        throw FeedbackSingular("perturbed_resolvent: 1 in spectrum of M D_lambda");
    }

    const std::size_t n = triple.n;
    ComplexMatrix lamI = ComplexMatrix::identity(n);
    const ComplexMatrix a_node = open.node_matrix();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            lamI(i, j) = (i == j ? lambda : cplx{0.0, 0.0}) - a_node(i, j);
        }
    }
    ComplexMatrix r_open = solve_linear(lamI, ComplexMatrix::identity(n));

    // (I - D_lambda M)^{-1} on the grid space collapses to a rank-one update
    // with feedback denominator 1 - M D_lambda 1.
    const cvec elim = triple.elimination_row(triple.G);
    cvec m_on_domain(n);  // row x -> M (grid lift of x through ker G)
    for (std::size_t j = 0; j < n; ++j) {
        m_on_domain[j] = triple.M[0] * elim[j] + triple.M[j + 1];
    }
    const cvec row = apply_left(m_on_domain, r_open);
    const cplx denom = 1.0 - ms;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx coeff = d.lift[i + 1] / denom;
        if (coeff == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < n; ++j) {
            r_open(i, j) += coeff * row[j];
        }
    }
    return r_open;
}

ComplexMatrix perturbed_resolvent(const BoundaryTriple& triple, cplx lambda) {
    ComplexMatrix r_node = perturbed_resolvent_node(triple, lambda);
    const Generator closed = perturbed_generator(triple);
    for (std::size_t i = 0; i < r_node.rows(); ++i) {
        for (std::size_t j = 0; j < r_node.cols(); ++j) {
            r_node(i, j) *= closed.scale[i] / closed.scale[j];
        }
    }
    return r_node;
}

} // namespace semilab::boundary
