#pragma once

#include "semilab/boundary/generator.hpp"
#include "semilab/boundary/triple.hpp"

namespace semilab::diagnostics {

using boundary::BoundaryTriple;
using boundary::Generator;
using numeric::rvec;

/// Singular-value profile of T(t); decay ratios carry the compactness
/// content at matrix scale.
struct CompactnessProfile {
    double t = 0.0;
    rvec sv;           // descending
    rvec decay_ratio;  // sv[k+1]/sv[k]
};

CompactnessProfile compactness_profile(const Generator& gen, double t);

/// Difference diagnostics for R(t) = T^cl(t) - T(t), all evaluated in node
/// coordinates so the two generators are directly comparable:
///  (a) singular values of R(t),
///  (b) norm-continuity modulus ||R(t+h) - R(t)|| per h,
///  (c) singular values of R(lambda, A^cl) - R(lambda, A) and the count
///      above 1e-8 of the top value.
struct PerturbationDifferenceReport {
    double t = 0.0;
    rvec semigroup_diff_sv;
    rvec h_list;
    rvec modulus;
    rvec resolvent_diff_sv;
    std::size_t resolvent_diff_rank = 0;
};

PerturbationDifferenceReport perturbation_difference_report(const BoundaryTriple& triple,
                                                            double t, numeric::cplx lambda,
                                                            const rvec& h_list);

} // namespace semilab::diagnostics
