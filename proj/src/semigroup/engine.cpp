#include "semilab/semigroup/engine.hpp"

#include <cmath>

#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace semilab::semigroup {

using numeric::apply;
using numeric::apply_left;
using numeric::matrix_exponential;
using numeric::multiply;
using numeric::operator_norm;
using numeric::outer;
using numeric::subtract;

namespace {

void require_scalar_signal(const SignalSamples& u) {
    if (u.channels() != 1) throw GridMismatch("expected a scalar signal");
}

cvec scaled(const cvec& v, cplx f) {
    cvec out = v;
    for (auto& z : out) z *= f;
    return out;
}

// Trapezoid state recursion z_{j+1} = E (z_j + dt/2 B u_j) + dt/2 B u_{j+1};
// visit(j, z_j) is called for every sample.
template <typename Visit>
void walk_controlled_state(const ComplexMatrix& e, const cvec& b, const SignalSamples& u,
                           Visit&& visit) {
    const double half = 0.5 * u.grid.dt();
    cvec z(b.size(), cplx{0.0, 0.0});
    for (std::size_t j = 0; j <= u.grid.steps; ++j) {
        visit(j, z);
        if (j == u.grid.steps) break;
        cvec zin = z;
        const cplx uj = u.values[j][0];
        for (std::size_t i = 0; i < b.size(); ++i) zin[i] += half * b[i] * uj;
        z = apply(e, zin);
        const cplx un = u.values[j + 1][0];
        for (std::size_t i = 0; i < b.size(); ++i) z[i] += half * b[i] * un;
    }
}

struct TripleIoPieces {
    Generator open;
    ComplexMatrix e_node;    // exp(dt A) in node coordinates
    cvec b_node;
    cvec yosida_row;         // x -> M (lift of x through ker G)
};

TripleIoPieces make_io_pieces(const BoundaryTriple& t, double dt) {
    TripleIoPieces p{boundary::restrict_generator(t), ComplexMatrix{}, {}, {}};
    p.e_node = matrix_exponential(p.open.node_matrix(), dt);
    const rvec eigs = numeric::eig_hermitian(p.open.matrix).eigenvalues;
    p.b_node = dirichlet_operator(t, p.open.growth_bound + 1.0, eigs).B;
    const cvec elim = t.elimination_row(t.G);
    p.yosida_row.resize(t.n);
    for (std::size_t j = 0; j < t.n; ++j) {
        p.yosida_row[j] = t.M[0] * elim[j] + t.M[j + 1];
    }
    return p;
}

double fit_intercept(const rvec& x, const rvec& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return y.empty() ? 0.0 : y.front();
    const double slope = (n * sxy - sx * sy) / denom;
    return (sy - slope * sx) / n;
}

} // namespace

ComplexMatrix semigroup_at(const Generator& gen, double t) {
    if (t < 0.0) throw NegativeTime("semigroup_at: t must be nonnegative");
    return matrix_exponential(gen.matrix, t);
}

ComplexMatrix semigroup_at_node(const Generator& gen, double t) {
    if (t < 0.0) throw NegativeTime("semigroup_at: t must be nonnegative");
    return matrix_exponential(gen.node_matrix(), t);
}

cvec control_map(const Generator& gen, const cvec& b, const SignalSamples& u) {
    require_scalar_signal(u);
    if (b.size() != gen.matrix.rows()) throw GridMismatch("control_map: B size");
    const ComplexMatrix e = matrix_exponential(gen.matrix, u.grid.dt());
    // Horner form of sum_i w_i T(t_max - s_i) B u_i
    cvec acc = scaled(b, u.grid.weight(0) * u.values[0][0]);
    for (std::size_t i = 1; i <= u.grid.steps; ++i) {
        acc = apply(e, acc);
        const cplx f = u.grid.weight(i) * u.values[i][0];
        for (std::size_t k = 0; k < b.size(); ++k) acc[k] += f * b[k];
    }
    return acc;
}

SignalSamples observation_map(const Generator& gen, const cvec& c, const cvec& x,
                              const TimeGrid& grid) {
    if (c.size() != gen.matrix.rows() || x.size() != gen.matrix.rows()) {
        throw GridMismatch("observation_map: dimension mismatch");
    }
    const ComplexMatrix e = matrix_exponential(gen.matrix, grid.dt());
    SignalSamples y(grid, 1);
    cvec state = x;
    for (std::size_t i = 0; i <= grid.steps; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * state[k];
        y.values[i][0] = acc;
        if (i < grid.steps) state = apply(e, state);
    }
    return y;
}

SignalSamples input_output_map(const Generator& gen, const cvec& b, const cvec& c,
                               const SignalSamples& u) {
    require_scalar_signal(u);
    if (b.size() != gen.matrix.rows() || c.size() != gen.matrix.rows()) {
        throw GridMismatch("input_output_map: dimension mismatch");
    }
    const ComplexMatrix e = matrix_exponential(gen.matrix, u.grid.dt());
    SignalSamples y(u.grid, 1);
    walk_controlled_state(e, b, u, [&](std::size_t j, const cvec& z) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * z[k];
        y.values[j][0] = acc;
    });
    return y;
}

SignalSamples input_output_map(const BoundaryTriple& triple, const SignalSamples& u) {
    require_scalar_signal(u);
    const TripleIoPieces p = make_io_pieces(triple, u.grid.dt());
    SignalSamples y(u.grid, 1);
    walk_controlled_state(p.e_node, p.b_node, u, [&](std::size_t j, const cvec& z) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < z.size(); ++k) acc += p.yosida_row[k] * z[k];
        // boundary datum enters the observed node through the G-constraint
        acc += triple.M[0] * (u.values[j][0] / triple.G[0]);
        y.values[j][0] = acc;
    });
    return y;
}

TransferSample transfer_function(const BoundaryTriple& triple, cplx lambda) {
    const boundary::DirichletOperator d = dirichlet_operator(triple, lambda);
    return TransferSample{lambda, triple.apply_row(triple.M, d.lift)};
}

RegularityProbe regularity_probe(const Generator& gen, const cvec& b, const cvec& c, cplx v,
                                 const rvec& t_grid) {
    RegularityProbe probe;
    probe.t_grid = t_grid;
    for (double t : t_grid) {
        const TimeGrid grid(t, 256);
        const SignalSamples u = constant_signal(grid, v);
        const SignalSamples y = input_output_map(gen, b, c, u);
        cplx integral{0.0, 0.0};
        for (std::size_t i = 0; i <= grid.steps; ++i) integral += grid.weight(i) * y.values[i][0];
        probe.averages.push_back(std::abs(integral) / t);
    }
    probe.extrapolated = fit_intercept(probe.t_grid, probe.averages);
    return probe;
}

RegularityProbe regularity_probe(const BoundaryTriple& triple, cplx v, const rvec& t_grid) {
    RegularityProbe probe;
    probe.t_grid = t_grid;
    for (double t : t_grid) {
        const TimeGrid grid(t, 256);
        const TripleIoPieces p = make_io_pieces(triple, grid.dt());
        const SignalSamples u = constant_signal(grid, v);
        cplx integral{0.0, 0.0};
        walk_controlled_state(p.e_node, p.b_node, u, [&](std::size_t j, const cvec& z) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < z.size(); ++k) acc += p.yosida_row[k] * z[k];
            integral += grid.weight(j) * acc;
        });
        probe.averages.push_back(std::abs(integral) / t);
    }
    probe.extrapolated = fit_intercept(probe.t_grid, probe.averages);
    return probe;
}

namespace {

double vcf_residual_impl(const BoundaryTriple& triple, double t, const TimeGrid& grid,
                         bool convolution_form) {
    if (t == 0.0) return 0.0;
    if (std::abs(t - grid.t_max) > 1e-12 * std::max(1.0, t)) {
        throw GridMismatch("vcf_residual: t must equal grid.t_max");
    }
    const std::size_t n = triple.n;
    const Generator open = boundary::restrict_generator(triple);
    const Generator closed = boundary::perturbed_generator(triple);
    const ComplexMatrix a_node = open.node_matrix();
    const ComplexMatrix acl_node = closed.node_matrix();
    const double dt = grid.dt();
    const std::size_t nsteps = grid.steps;

    const ComplexMatrix e_open = matrix_exponential(a_node, dt);
    const ComplexMatrix e_closed = matrix_exponential(acl_node, dt);

    const rvec eigs = numeric::eig_hermitian(open.matrix).eigenvalues;
    const cvec b = dirichlet_operator(triple, open.growth_bound + 1.0, eigs).B;

    // M applied through the lift carrying the perturbed boundary condition:
    // evaluated on closed-loop trajectories this is exactly M z(t).
    cvec elim_cl;
    cvec row_cl(n, cplx{0.0, 0.0});
    {
        cvec row(triple.n + 1);
        for (std::size_t j = 0; j <= triple.n; ++j) row[j] = triple.G[j] - triple.M[j];
        bool zero_m = true;
        for (const auto& z : triple.M) {
            if (z != cplx{0.0, 0.0}) zero_m = false;
        }
        if (!zero_m) {
            elim_cl = triple.elimination_row(row);
            for (std::size_t j = 0; j < n; ++j) {
                row_cl[j] = triple.M[0] * elim_cl[j] + triple.M[j + 1];
            }
        }
    }

    // standard form: p_i = T(t - s_i) B and r_i = row_cl T^cl(s_i);
    // convolution form swaps which semigroup sits on each side.
    const ComplexMatrix& e_left = convolution_form ? e_closed : e_open;
    const ComplexMatrix& e_right = convolution_form ? e_open : e_closed;
    std::vector<cvec> p(nsteps + 1);
    p[nsteps] = b;
    for (std::size_t i = nsteps; i-- > 0;) p[i] = apply(e_left, p[i + 1]);
    std::vector<cvec> r(nsteps + 1);
    r[0] = row_cl;
    for (std::size_t i = 0; i < nsteps; ++i) r[i + 1] = apply_left(r[i], e_right);

    ComplexMatrix residual = subtract(matrix_exponential(acl_node, t),
                                      matrix_exponential(a_node, t));
    for (std::size_t i = 0; i <= nsteps; ++i) {
        const double w = grid.weight(i);
        for (std::size_t a = 0; a < n; ++a) {
            const cplx pa = w * p[i][a];
            if (pa == cplx{0.0, 0.0}) continue;
            for (std::size_t bcol = 0; bcol < n; ++bcol) {
                residual(a, bcol) -= pa * r[i][bcol];
            }
        }
    }

    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::norm(residual(i, j));
        worst = std::max(worst, std::sqrt(col));
    }
    return worst;
}

} // namespace

double vcf_residual(const BoundaryTriple& triple, double t, const TimeGrid& grid) {
    return vcf_residual_impl(triple, t, grid, false);
}

double vcf_residual_convolution_form(const BoundaryTriple& triple, double t,
                                     const TimeGrid& grid) {
    return vcf_residual_impl(triple, t, grid, true);
}

FeedbackReport feedback_wellposed_check(const Generator& gen, const cvec& b, const cvec& c,
                                        const TimeGrid& grid) {
    const std::size_t m = grid.samples();
    const ComplexMatrix e = matrix_exponential(gen.matrix, grid.dt());
    ComplexMatrix f(m, m);
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t jj = 0; jj < mm; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        SignalSamples impulse(grid, 1);
        impulse.values[j][0] = 1.0;
        walk_controlled_state(e, b, impulse, [&](std::size_t i, const cvec& z) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * z[k];
            f(i, j) = acc;
        });
    }
    ComplexMatrix i_minus_f = numeric::subtract(ComplexMatrix::identity(m), f);
    ComplexMatrix inv = numeric::solve_linear(i_minus_f, ComplexMatrix::identity(m));
    FeedbackReport rep;
    rep.inverse_norm = operator_norm(inv);
    rep.uniformly_bounded = std::isfinite(rep.inverse_norm) && rep.inverse_norm < 1e6;
    return rep;
}

FeedbackReport feedback_wellposed_check(const BoundaryTriple& triple, const TimeGrid& grid) {
    const std::size_t m = grid.samples();
    const TripleIoPieces p = make_io_pieces(triple, grid.dt());
    const cplx feedthrough = triple.M[0] / triple.G[0];
    ComplexMatrix f(m, m);
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t jj = 0; jj < mm; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        SignalSamples impulse(grid, 1);
        impulse.values[j][0] = 1.0;
        walk_controlled_state(p.e_node, p.b_node, impulse, [&](std::size_t i, const cvec& z) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < z.size(); ++k) acc += p.yosida_row[k] * z[k];
            if (i == j) acc += feedthrough;
            f(i, j) = acc;
        });
    }
    ComplexMatrix i_minus_f = numeric::subtract(ComplexMatrix::identity(m), f);
    ComplexMatrix inv;
    try {
        inv = numeric::solve_linear(i_minus_f, ComplexMatrix::identity(m));
    } catch (const SingularMatrix&) {
        throw FeedbackSingular("feedback_wellposed_check: I - F singular on this grid");
    }
    FeedbackReport rep;
    rep.inverse_norm = operator_norm(inv);
    rep.uniformly_bounded = std::isfinite(rep.inverse_norm) && rep.inverse_norm < 1e6;
    return rep;
}

} // namespace semilab::semigroup
