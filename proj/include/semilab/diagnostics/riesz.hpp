#pragma once

#include "semilab/boundary/generator.hpp"
#include "semilab/semigroup/grid.hpp"

namespace semilab::diagnostics {

using boundary::Generator;
using numeric::ComplexMatrix;
using semigroup::TimeGrid;

/// Equicontinuity probe for the convolution map (Kf)(t) = int_0^t T(t-s) f(s) ds:
/// for each shift h, the supremum over sampled unit-ball f of
/// int_0^tau ||(Kf)(t+h) - (Kf)(t)||^p dt. Sampling is seeded random
/// piecewise-constant signals plus eigenvector-aligned steps.
struct RieszProbe {
    double tau = 0.0;
    double p = 2.0;
    numeric::rvec h_list;
    numeric::rvec residuals;  // sup residual per h
};

RieszProbe riesz_condition_probe(const Generator& gen, double tau, double p,
                                 const TimeGrid& grid, const numeric::rvec& h_list,
                                 std::size_t samples, std::uint64_t seed);

} // namespace semilab::diagnostics
