#include "semilab/diagnostics/resolvent_scan.hpp"

#include <cmath>

#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace semilab::diagnostics {

using numeric::is_diagonal;
using numeric::operator_norm;
using numeric::solve_linear;

double resolvent_norm(const Generator& gen, cplx lambda) {
    const std::size_t n = gen.matrix.rows();
    if (is_diagonal(gen.matrix)) {
        double best = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double dist = std::abs(lambda - gen.matrix(k, k));
            if (dist == 0.0) throw LambdaInSpectrum("resolvent_norm: lambda is an eigenvalue");
            best = std::max(best, 1.0 / dist);
        }
        return best;
    }
    ComplexMatrix shifted(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            shifted(i, j) = (i == j ? lambda : cplx{0.0, 0.0}) - gen.matrix(i, j);
        }
    }
    return operator_norm(solve_linear(shifted, ComplexMatrix::identity(n)));
}

ResolventScan norm_continuity_scan(const Generator& gen, double mu, double tau_max,
                                   std::size_t points) {
    if (!(mu > gen.growth_bound)) {
        throw MuBelowGrowthBound("norm_continuity_scan: mu must exceed the growth bound");
    }
    if (points < 2 || !(tau_max > 1.0)) {
        throw GridTooShort("norm_continuity_scan: need tau_max > 1 and >= 2 points");
    }
    ResolventScan scan;
    scan.mu = mu;
    scan.tau_grid.resize(points);
    scan.norms.assign(points, 0.0);
    const double step = std::log(tau_max) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        scan.tau_grid[i] = std::exp(step * static_cast<double>(i));
    }

    const std::ptrdiff_t np = static_cast<std::ptrdiff_t>(points);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (!numeric::is_diagonal(gen.matrix))
#endif
    for (std::ptrdiff_t i = 0; i < np; ++i) {
        scan.norms[static_cast<std::size_t>(i)] =
            resolvent_norm(gen, cplx{mu, scan.tau_grid[static_cast<std::size_t>(i)]});
    }

    scan.pazy_values.resize(points);
    scan.pazy_index = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        scan.pazy_values[i] = std::log(scan.tau_grid[i]) * scan.norms[i];
        if (scan.tau_grid[i] >= tau_max / 10.0) {
            scan.pazy_index = std::max(scan.pazy_index, scan.pazy_values[i]);
        }
    }
    scan.decay_flag = scan.norms.back() < 0.05 * scan.norms.front();
    return scan;
}

double pazy_index(const Generator& gen, double mu, double tau_max, std::size_t points) {
    return norm_continuity_scan(gen, mu, tau_max, points).pazy_index;
}

Generator skew_ladder_generator(std::size_t n, double spacing, double shift) {
    ComplexMatrix a(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        a(k, k) = cplx{shift, spacing * static_cast<double>(k + 1)};
    }
    Generator g;
    g.matrix = std::move(a);
    g.scale.assign(n, 1.0);
    g.growth_bound = shift;
    g.hermitian = false;
    g.label = "skew-ladder";
    return g;
}

} // namespace semilab::diagnostics
