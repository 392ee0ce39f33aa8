#pragma once

#include "semilab/volterra/product_system.hpp"

namespace semilab::volterra {

using semigroup::SignalSamples;

/// Time-steps x' = A^cl x + (k * P x) with implicit Euler in A^cl and an
/// explicit trapezoid convolution (first order in dt). Throws StepUnstable
/// once the state norm exceeds 1e8.
SignalSamples solve_volterra_direct(const ComplexMatrix& acl, const ComplexMatrix& p_obs,
                                    const ExpPolyKernel& k, const cvec& x0,
                                    const TimeGrid& grid);
SignalSamples solve_volterra_direct(const BoundaryTriple& triple, const ExpPolyKernel& k,
                                    const cvec& x0, const TimeGrid& grid);

/// X-component of exp(t (A + P)) (x0, 0) on the grid; exact within the
/// finitely-spanned product space up to matrix-exponential accuracy.
SignalSamples solve_volterra_product(const ProductSystem& system, const cvec& x0,
                                     const TimeGrid& grid);

/// Norm-continuity moduli of the coupled semigroup against the uncoupled
/// block-diagonal one, plus Pazy surrogates for both at a common mu.
struct VolterraRegularityReport {
    rvec t_list;
    rvec h_list;
    std::vector<rvec> modulus_full;  // [t][h]
    std::vector<rvec> modulus_free;
    double mu = 0.0;
    double pazy_full = 0.0;
    double pazy_free = 0.0;
};

VolterraRegularityReport volterra_regularity_report(const ProductSystem& system,
                                                    const rvec& t_list, const rvec& h_list,
                                                    double tau_max = 1e3,
                                                    std::size_t points = 25);

} // namespace semilab::volterra
