#include "semilab/diagnostics/riesz.hpp"

#include <cmath>
#include <random>

#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace semilab::diagnostics {

using numeric::apply;
using numeric::cplx;
using numeric::cvec;
using numeric::matrix_exponential;
using numeric::rvec;

namespace {

// piecewise-constant f on the grid, one value vector per node
using Signal = std::vector<cvec>;

Signal random_signal(std::size_t nodes, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Signal f(nodes, cvec(dim));
    for (auto& node : f) {
        for (auto& z : node) z = cplx{g(rng), g(rng)};
    }
    return f;
}

void normalize_lp(Signal& f, std::size_t interior_nodes, double dt, double p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < interior_nodes; ++j) {
        acc += dt * std::pow(numeric::norm2(f[j]), p);
    }
    const double s = std::pow(acc, 1.0 / p);
    if (s == 0.0) return;
    for (auto& node : f) {
        for (auto& z : node) z /= s;
    }
}

} // namespace

RieszProbe riesz_condition_probe(const Generator& gen, double tau, double p,
                                 const TimeGrid& grid, const rvec& h_list,
                                 std::size_t samples, std::uint64_t seed) {
    if (!(p > 1.0)) throw BadExponent("riesz_condition_probe: need p > 1");
    if (samples < 10) throw GridTooShort("riesz_condition_probe: need >= 10 samples");
    if (std::abs(tau - grid.t_max) > 1e-12 * std::max(1.0, tau)) {
        throw GridMismatch("riesz_condition_probe: tau must equal grid.t_max");
    }
    const double dt = grid.dt();
    std::vector<std::size_t> shifts;
    double hmax = 0.0;
    for (double h : h_list) {
        if (!(h > 0.0 && h < tau)) throw GridMismatch("riesz probe: h must lie in (0, tau)");
        const double k = h / dt;
        const auto ki = static_cast<std::size_t>(std::llround(k));
        if (std::abs(k - static_cast<double>(ki)) > 1e-9 || ki == 0) {
            throw GridMismatch("riesz probe: each h must be a grid multiple");
        }
        shifts.push_back(ki);
        hmax = std::max(hmax, h);
    }

    const std::size_t n = gen.matrix.rows();
    const std::size_t extra = static_cast<std::size_t>(std::llround(hmax / dt));
    const std::size_t total = grid.steps + extra;  // nodes 0..total
    const ComplexMatrix e = matrix_exponential(gen.matrix, dt);

    // candidate signals: seeded random, plus eigenvector-aligned constants and
    // half-interval steps for Hermitian generators; all supported on [0, tau]
    std::vector<Signal> fs;
    for (std::size_t s = 0; s < samples; ++s) {
        fs.push_back(random_signal(total + 1, n, seed + 1000 * s));
    }
    if (gen.hermitian) {
        const auto sd = numeric::eig_hermitian(gen.matrix);
        for (std::size_t k = 0; k < std::min<std::size_t>(3, n); ++k) {
            cvec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = sd.eigenvectors(i, n - 1 - k);
            Signal cst(total + 1, v);
            fs.push_back(cst);
            Signal step(total + 1, cvec(n, cplx{0.0, 0.0}));
            for (std::size_t j = grid.steps / 2; j <= total; ++j) step[j] = v;
            fs.push_back(std::move(step));
        }
    }
    for (auto& f : fs) {
        for (std::size_t j = grid.steps + 1; j <= total; ++j) {
            f[j].assign(n, cplx{0.0, 0.0});
        }
        normalize_lp(f, grid.steps, dt, p);
    }

    std::vector<rvec> per_sample(fs.size(), rvec(h_list.size(), 0.0));
    const std::ptrdiff_t nf = static_cast<std::ptrdiff_t>(fs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t si = 0; si < nf; ++si) {
        const Signal& f = fs[static_cast<std::size_t>(si)];
        std::vector<cvec> kf(total + 1, cvec(n, cplx{0.0, 0.0}));
        for (std::size_t j = 0; j < total; ++j) {
            cvec zin = kf[j];
            for (std::size_t i = 0; i < n; ++i) zin[i] += 0.5 * dt * f[j][i];
            kf[j + 1] = apply(e, zin);
            for (std::size_t i = 0; i < n; ++i) kf[j + 1][i] += 0.5 * dt * f[j + 1][i];
        }
        for (std::size_t hi = 0; hi < shifts.size(); ++hi) {
            const std::size_t k = shifts[hi];
            double acc = 0.0;
            for (std::size_t j = 0; j <= grid.steps; ++j) {
                double diff2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) diff2 += std::norm(kf[j + k][i] - kf[j][i]);
                acc += dt * std::pow(std::sqrt(diff2), p);
            }
            per_sample[static_cast<std::size_t>(si)][hi] = acc;
        }
    }

    RieszProbe probe;
    probe.tau = tau;
    probe.p = p;
    probe.h_list = h_list;
    probe.residuals.assign(h_list.size(), 0.0);
    for (const auto& res : per_sample) {
        for (std::size_t hi = 0; hi < res.size(); ++hi) {
            probe.residuals[hi] = std::max(probe.residuals[hi], res[hi]);
        }
    }
    return probe;
}

} // namespace semilab::diagnostics
