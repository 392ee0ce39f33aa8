#pragma once

#include "semilab/boundary/dirichlet.hpp"
#include "semilab/boundary/generator.hpp"
#include "semilab/semigroup/grid.hpp"

namespace semilab::semigroup {

using boundary::BoundaryTriple;
using boundary::Generator;
using numeric::ComplexMatrix;

/// Transfer-function sample H(lambda) = M D_lambda.
struct TransferSample {
    cplx lambda;
    cplx H;
};

struct RegularityProbe {
    rvec t_grid;
    rvec averages;       // (1/t) integral of the step response of F
    double extrapolated; // linear-fit value at t = 0
};

struct FeedbackReport {
    double inverse_norm = 0.0;        // ||(I - F)^{-1}|| on the time grid
    bool uniformly_bounded = false;   // finite and below 1e6
};

/// T(t) = exp(t * gen.matrix). Throws NegativeTime for t < 0.
ComplexMatrix semigroup_at(const Generator& gen, double t);

/// Same semigroup expressed in plain node coordinates.
ComplexMatrix semigroup_at_node(const Generator& gen, double t);

/// Phi_{t_max} u by composite trapezoid; u must be a scalar signal.
cvec control_map(const Generator& gen, const cvec& b, const SignalSamples& u);

/// Samples of C T(t_i) x.
SignalSamples observation_map(const Generator& gen, const cvec& c, const cvec& x,
                              const TimeGrid& grid);

/// Samples of C Phi_{t_i} u (causal convolution quadrature).
SignalSamples input_output_map(const Generator& gen, const cvec& b, const cvec& c,
                               const SignalSamples& u);

/// Boundary-honest input-output map of the triple: the output is M applied
/// to the grid lift carrying the actual boundary data G z = u.
SignalSamples input_output_map(const BoundaryTriple& triple, const SignalSamples& u);

TransferSample transfer_function(const BoundaryTriple& triple, cplx lambda);

/// Cesaro averages of the step response for constant input v, plus a linear
/// extrapolation to t = 0. Uses the Yosida-regularized output (boundary
/// reconstruction through ker G), whose averages vanish with t.
RegularityProbe regularity_probe(const BoundaryTriple& triple, cplx v, const rvec& t_grid);
RegularityProbe regularity_probe(const Generator& gen, const cvec& b, const cvec& c, cplx v,
                                 const rvec& t_grid);

/// Defect of the variation-of-constants formula at time t = grid.t_max,
/// maximized over basis states. Zero boundary feedback gives zero residual.
double vcf_residual(const BoundaryTriple& triple, double t, const TimeGrid& grid);

/// Same defect for the identity-conjugated form of the formula, with the
/// perturbed semigroup inside the convolution. The two integral operators
/// coincide at matrix scale, so residuals agree up to quadrature error.
double vcf_residual_convolution_form(const BoundaryTriple& triple, double t,
                                     const TimeGrid& grid);

/// Builds the causal matrix of the input-output map on the grid and reports
/// ||(I - F)^{-1}||.
FeedbackReport feedback_wellposed_check(const BoundaryTriple& triple, const TimeGrid& grid);
FeedbackReport feedback_wellposed_check(const Generator& gen, const cvec& b, const cvec& c,
                                        const TimeGrid& grid);

} // namespace semilab::semigroup
