#include "semilab/diagnostics/admissibility.hpp"

#include <cmath>
#include <random>

#include "semilab/boundary/dirichlet.hpp"
#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"

namespace semilab::diagnostics {

using numeric::adjoint;
using numeric::apply;
using numeric::apply_left;
using numeric::eig_hermitian;
using numeric::matrix_exponential;
using numeric::norm2;
using numeric::operator_norm;

namespace {

void check_battery_pre(double p, double tau, const TimeGrid& grid) {
    if (!(p > 1.0)) throw BadExponent("admissibility: need p > 1");
    if (std::abs(tau - grid.t_max) > 1e-12 * std::max(1.0, tau)) {
        throw GridMismatch("admissibility: tau must equal grid.t_max");
    }
}

std::vector<cvec> observation_rows(const Generator& gen, const cvec& c_row,
                                   const TimeGrid& grid) {
    const ComplexMatrix e = matrix_exponential(gen.matrix, grid.dt());
    std::vector<cvec> rows(grid.samples());
    rows[0] = c_row;
    for (std::size_t i = 0; i + 1 <= grid.steps; ++i) rows[i + 1] = apply_left(rows[i], e);
    return rows;
}

std::vector<cvec> candidate_states(const Generator& gen, std::size_t n, std::size_t samples,
                                   std::uint64_t seed) {
    std::vector<cvec> xs;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t s = 0; s < samples; ++s) {
        cvec x(n);
        for (auto& z : x) z = cplx{g(rng), g(rng)};
        const double nx = norm2(x);
        for (auto& z : x) z /= nx;
        xs.push_back(std::move(x));
    }
    if (gen.hermitian) {
        const auto sd = eig_hermitian(gen.matrix);
        for (std::size_t k = 0; k < n; ++k) {
            cvec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = sd.eigenvectors(i, k);
            xs.push_back(std::move(v));
        }
    }
    return xs;
}

} // namespace

double admissibility_observation(const Generator& gen, const cvec& c_row, double tau, double p,
                                 const TimeGrid& grid, std::size_t samples, std::uint64_t seed) {
    check_battery_pre(p, tau, grid);
    const std::size_t n = gen.matrix.rows();
    if (c_row.size() != n) throw GridMismatch("admissibility_observation: row size");

    const std::vector<cvec> rows = observation_rows(gen, c_row, grid);

    if (p == 2.0) {
        ComplexMatrix gram(n, n);
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            const double w = grid.weight(i);
            for (std::size_t a = 0; a < n; ++a) {
                const cplx ra = w * std::conj(rows[i][a]);
                if (ra == cplx{0.0, 0.0}) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    gram(a, b) += ra * rows[i][b];
                }
            }
        }
        const rvec eigs = eig_hermitian(gram).eigenvalues;
        return std::sqrt(std::max(eigs.back(), 0.0));
    }

    double best = 0.0;
    for (const cvec& x : candidate_states(gen, n, samples, seed)) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            cplx y{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) y += rows[i][k] * x[k];
            acc += grid.weight(i) * std::pow(std::abs(y), p);
        }
        best = std::max(best, acc);
    }
    return std::pow(best, 1.0 / p);
}

double admissibility_control(const Generator& gen, const cvec& b_col, double tau, double p,
                             const TimeGrid& grid, std::size_t samples, std::uint64_t seed) {
    check_battery_pre(p, tau, grid);
    const std::size_t n = gen.matrix.rows();
    if (b_col.size() != n) throw GridMismatch("admissibility_control: column size");

    // columns T(tau - s_i) B, walked backwards from s = tau
    const ComplexMatrix e = matrix_exponential(gen.matrix, grid.dt());
    std::vector<cvec> cols(grid.samples());
    cols[grid.steps] = b_col;
    for (std::size_t i = grid.steps; i-- > 0;) cols[i] = apply(e, cols[i + 1]);

    if (p == 2.0) {
        ComplexMatrix k(n, grid.samples());
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            const double sw = std::sqrt(grid.weight(i));
            for (std::size_t a = 0; a < n; ++a) k(a, i) = sw * cols[i][a];
        }
        return operator_norm(k);
    }

    const double q = p / (p - 1.0);
    std::mt19937_64 rng(seed + 1);
    std::normal_distribution<double> g(0.0, 1.0);
    double best = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        cvec u(grid.samples());
        double unorm = 0.0;
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            u[i] = cplx{g(rng), g(rng)};
            unorm += grid.weight(i) * std::pow(std::abs(u[i]), p);
        }
        const double scalef = std::pow(unorm, 1.0 / p);
        cvec phi(n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            const cplx f = grid.weight(i) * u[i] / scalef;
            for (std::size_t a = 0; a < n; ++a) phi[a] += f * cols[i][a];
        }
        best = std::max(best, norm2(phi));
    }
    (void)q;
    return best;
}

AdmissibilityReport admissibility_battery(const BoundaryTriple& triple, rvec tau_grid, double p,
                                          std::size_t steps_per_tau, std::size_t samples,
                                          std::uint64_t seed) {
    if (!(p > 1.0)) throw BadExponent("admissibility_battery: need p > 1");
    AdmissibilityReport rep;
    rep.p = p;
    std::sort(tau_grid.begin(), tau_grid.end());
    rep.tau_grid = tau_grid;

    const Generator gen = boundary::restrict_generator(triple);
    const rvec eigs = eig_hermitian(gen.matrix).eigenvalues;
    const cvec b_node =
        dirichlet_operator(triple, gen.growth_bound + 1.0, eigs).B;
    const cvec b = gen.to_matrix_coords(b_node);
    const cvec elim = triple.elimination_row(triple.G);
    cvec c_row(triple.n);
    for (std::size_t j = 0; j < triple.n; ++j) {
        c_row[j] = (triple.M[0] * elim[j] + triple.M[j + 1]) / gen.scale[j];
    }

    for (double tau : rep.tau_grid) {
        const TimeGrid grid(tau, steps_per_tau);
        rep.gamma.push_back(
            admissibility_observation(gen, c_row, tau, p, grid, samples, seed));
        rep.c.push_back(admissibility_control(gen, b, tau, p, grid, samples, seed));
    }

    const bool spans = rep.tau_grid.front() <= rep.tau_grid.back() / 32.0 + 1e-12;
    rep.zero_class_gamma = spans && rep.gamma.front() < 0.1 * rep.gamma.back();
    rep.zero_class_c = spans && rep.c.front() < 0.1 * rep.c.back();
    return rep;
}

namespace {

DecayFit fit_loglog(const rvec& lambda_grid, double omega, const rvec& norms) {
    const std::size_t m = lambda_grid.size();
    rvec x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = std::log(lambda_grid[i] - omega);
        y[i] = std::log(norms[i]);
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double dm = static_cast<double>(m);
    const double slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / dm;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = y[i] - (slope * x[i] + icpt);
        rss += d * d;
    }
    return DecayFit{slope, std::sqrt(rss / dm)};
}

void check_fit_pre(const Generator& gen, double omega, const rvec& lambda_grid) {
    if (lambda_grid.size() < 4) throw GridTooShort("resolvent_decay_fit: need >= 4 points");
    for (double lam : lambda_grid) {
        if (!(lam > omega + 1.0)) {
            throw GridMismatch("resolvent_decay_fit: lambda must exceed omega + 1");
        }
    }
    (void)gen;
}

ComplexMatrix shifted(cplx lambda, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = (i == j ? lambda : cplx{0.0, 0.0}) - a(i, j);
        }
    }
    return out;
}

} // namespace

DecayFit resolvent_decay_fit_control(const Generator& gen, const cvec& b_col, double omega,
                                     const rvec& lambda_grid) {
    check_fit_pre(gen, omega, lambda_grid);
    rvec norms;
    for (double lam : lambda_grid) {
        norms.push_back(norm2(numeric::solve_linear(shifted(lam, gen.matrix), b_col)));
    }
    return fit_loglog(lambda_grid, omega, norms);
}

DecayFit resolvent_decay_fit_observation(const Generator& gen, const cvec& c_row, double omega,
                                         const rvec& lambda_grid) {
    check_fit_pre(gen, omega, lambda_grid);
    const ComplexMatrix astar = adjoint(gen.matrix);
    cvec cstar(c_row.size());
    for (std::size_t i = 0; i < c_row.size(); ++i) cstar[i] = std::conj(c_row[i]);
    rvec norms;
    for (double lam : lambda_grid) {
        // ||C R(lambda)|| = ||(conj(lambda) - A*)^{-1} C*||
        norms.push_back(norm2(numeric::solve_linear(shifted(lam, astar), cstar)));
    }
    return fit_loglog(lambda_grid, omega, norms);
}

} // namespace semilab::diagnostics
