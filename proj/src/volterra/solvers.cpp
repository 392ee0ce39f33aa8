#include "semilab/volterra/solvers.hpp"

#include <cmath>

#include "semilab/diagnostics/resolvent_scan.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"

namespace semilab::volterra {

using numeric::apply;
using numeric::matrix_exponential;
using numeric::norm2;
using numeric::operator_norm;
using numeric::subtract;

SignalSamples solve_volterra_direct(const ComplexMatrix& acl, const ComplexMatrix& p_obs,
                                    const ExpPolyKernel& k, const cvec& x0,
                                    const TimeGrid& grid) {
    const std::size_t n = acl.rows();
    if (x0.size() != n) throw DimensionMismatch("solve_volterra_direct: x0 size");
    for (const auto& z : x0) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw NonFiniteEntry("solve_volterra_direct: x0 not finite");
        }
    }
    const double dt = grid.dt();

    // (I - dt A)^{-1}, factored once
    ComplexMatrix lhs = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) lhs(i, j) -= dt * acl(i, j);
    }
    const ComplexMatrix stepper = numeric::solve_linear(lhs, ComplexMatrix::identity(n));

    cvec kval(grid.steps + 1);
    for (std::size_t m = 0; m <= grid.steps; ++m) {
        kval[m] = k.empty() ? cplx{0.0, 0.0} : k.evaluate(static_cast<double>(m) * dt);
    }

    SignalSamples traj(grid, n);
    traj.values[0] = x0;
    std::vector<cvec> px(grid.steps + 1);
    px[0] = apply(p_obs, x0);

    for (std::size_t j = 0; j < grid.steps; ++j) {
        // trapezoid over [0, t_{j+1}] with the unknown endpoint held explicit
        cvec conv(n, cplx{0.0, 0.0});
        if (!k.empty()) {
            for (std::size_t i = 0; i <= j; ++i) {
                const double w = (i == 0) ? 0.5 * dt : dt;
                const cplx f = w * kval[j + 1 - i];
                for (std::size_t a = 0; a < n; ++a) conv[a] += f * px[i][a];
            }
            const cplx f = 0.5 * dt * kval[0];
            for (std::size_t a = 0; a < n; ++a) conv[a] += f * px[j][a];
        }
        cvec rhs = traj.values[j];
        for (std::size_t a = 0; a < n; ++a) rhs[a] += dt * conv[a];
        traj.values[j + 1] = apply(stepper, rhs);
        if (norm2(traj.values[j + 1]) > 1e8) {
            throw StepUnstable("solve_volterra_direct: state norm exceeded 1e8");
        }
        px[j + 1] = apply(p_obs, traj.values[j + 1]);
    }
    return traj;
}

SignalSamples solve_volterra_direct(const BoundaryTriple& triple, const ExpPolyKernel& k,
                                    const cvec& x0, const TimeGrid& grid) {
    const boundary::Generator closed = boundary::perturbed_generator(triple);
    ComplexMatrix p_obs = triple.P;
    for (std::size_t i = 0; i < p_obs.rows(); ++i) {
        for (std::size_t j = 0; j < p_obs.cols(); ++j) {
            p_obs(i, j) *= closed.scale[i] / closed.scale[j];
        }
    }
    return solve_volterra_direct(closed.matrix, p_obs, k, x0, grid);
}

SignalSamples solve_volterra_product(const ProductSystem& system, const cvec& x0,
                                     const TimeGrid& grid) {
    const std::size_t n = system.n;
    if (x0.size() != n) throw DimensionMismatch("solve_volterra_product: x0 size");
    const std::size_t total = system.a_block.rows();
    const ComplexMatrix e_full = matrix_exponential(system.full_generator(), grid.dt());

    cvec z(total, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) z[i] = x0[i];

    SignalSamples traj(grid, n);
    for (std::size_t j = 0; j <= grid.steps; ++j) {
        for (std::size_t i = 0; i < n; ++i) traj.values[j][i] = z[i];
        if (j < grid.steps) z = apply(e_full, z);
    }
    return traj;
}

VolterraRegularityReport volterra_regularity_report(const ProductSystem& system,
                                                    const rvec& t_list, const rvec& h_list,
                                                    double tau_max, std::size_t points) {
    VolterraRegularityReport rep;
    rep.t_list = t_list;
    rep.h_list = h_list;

    const ComplexMatrix full = system.full_generator();
    const ComplexMatrix& free = system.a_block;

    for (double t : t_list) {
        rvec row_full, row_free;
        const ComplexMatrix tf = matrix_exponential(full, t);
        const ComplexMatrix ta = matrix_exponential(free, t);
        for (double h : h_list) {
            row_full.push_back(operator_norm(subtract(matrix_exponential(full, t + h), tf)));
            row_free.push_back(operator_norm(subtract(matrix_exponential(free, t + h), ta)));
        }
        rep.modulus_full.push_back(std::move(row_full));
        rep.modulus_free.push_back(std::move(row_free));
    }

    const boundary::Generator gen_full = boundary::make_generator(full, "volterra-coupled");
    const boundary::Generator gen_free = boundary::make_generator(free, "volterra-free");
    rep.mu = std::max(gen_full.growth_bound, gen_free.growth_bound) + 1.0 +
             2.0 * operator_norm(system.p_block);
    rep.pazy_full = diagnostics::pazy_index(gen_full, rep.mu, tau_max, points);
    rep.pazy_free = diagnostics::pazy_index(gen_free, rep.mu, tau_max, points);
    return rep;
}

} // namespace semilab::volterra
