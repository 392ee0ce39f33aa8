#pragma once

#include "semilab/boundary/generator.hpp"
#include "semilab/semigroup/grid.hpp"

namespace semilab::diagnostics {

using boundary::BoundaryTriple;
using boundary::Generator;
using numeric::ComplexMatrix;
using numeric::cplx;
using numeric::cvec;
using numeric::rvec;
using semigroup::TimeGrid;

/// Admissibility constants over a tau grid. The zero-class flags implement
/// the fixed proxy: constant at the smallest tau below 0.1 times the
/// constant at the largest, with the grid spanning at least a factor 32.
struct AdmissibilityReport {
    double p = 2.0;
    rvec tau_grid;   // increasing
    rvec gamma;      // observation constants per tau
    rvec c;          // control constants per tau
    bool zero_class_gamma = false;
    bool zero_class_c = false;
};

/// Best discretized constant of int_0^tau ||C T(s) x||^p ds <= gamma^p ||x||^p.
/// p = 2 solves the quadrature Gram eigenproblem exactly; other p sample the
/// unit sphere (seeded) plus the generator's eigenvectors.
double admissibility_observation(const Generator& gen, const cvec& c_row, double tau, double p,
                                 const TimeGrid& grid, std::size_t samples = 200,
                                 std::uint64_t seed = 0);

/// Best discretized constant of ||Phi_tau u|| <= c(tau) ||u||_p.
double admissibility_control(const Generator& gen, const cvec& b_col, double tau, double p,
                             const TimeGrid& grid, std::size_t samples = 200,
                             std::uint64_t seed = 0);

/// gamma and c curves for the triple's own M row and Dirichlet column.
AdmissibilityReport admissibility_battery(const BoundaryTriple& triple, rvec tau_grid, double p,
                                          std::size_t steps_per_tau, std::size_t samples,
                                          std::uint64_t seed);

/// Least-squares fit of log(resolvent norm) against log(lambda - omega).
struct DecayFit {
    double slope = 0.0;
    double residual = 0.0;  // rms deviation from the fitted line
};

DecayFit resolvent_decay_fit_control(const Generator& gen, const cvec& b_col, double omega,
                                     const rvec& lambda_grid);
DecayFit resolvent_decay_fit_observation(const Generator& gen, const cvec& c_row, double omega,
                                         const rvec& lambda_grid);

} // namespace semilab::diagnostics
