#pragma once

#include "semilab/boundary/generator.hpp"

namespace semilab::diagnostics {

using boundary::Generator;
using numeric::ComplexMatrix;
using numeric::cplx;
using numeric::rvec;

/// Frequency scan of ||R(mu + i tau, A)|| on a log-spaced tau grid, with the
/// Pazy surrogate log(tau) * norm maximized over the top decade.
struct ResolventScan {
    double mu = 0.0;
    rvec tau_grid;
    rvec norms;
    rvec pazy_values;
    double pazy_index = 0.0;
    bool decay_flag = false;  // last norm < 0.05 * first norm
};

/// Pre: mu > gen.growth_bound. Exactly diagonal generators use the closed
/// form max_k 1/|lambda - d_k| (the resolvent of a diagonal matrix is
/// diagonal); everything else goes through solve + SVD per grid point.
ResolventScan norm_continuity_scan(const Generator& gen, double mu, double tau_max,
                                   std::size_t points);

/// Max of log(tau) ||R(mu + i tau)|| over the top decade of the grid.
double pazy_index(const Generator& gen, double mu, double tau_max, std::size_t points);

/// Negative control: diag(shift + i k spacing), k = 1..n. Its resolvent
/// norms along mu + i tau stay bounded below for tau up to n * spacing.
Generator skew_ladder_generator(std::size_t n, double spacing, double shift);

/// ||R(lambda, A)|| for a single point (same dispatch as the scan).
double resolvent_norm(const Generator& gen, cplx lambda);

} // namespace semilab::diagnostics
