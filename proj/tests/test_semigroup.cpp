#include <doctest.h>

#include <cmath>
#include <random>

#include "semilab/boundary/generator.hpp"
#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/svd.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/semigroup/engine.hpp"
#include "test_support.hpp"

using namespace semilab;
using namespace semilab::semigroup;
using boundary::build_heat_triple;
using boundary::make_generator;
using boundary::perturbed_generator;
using boundary::restrict_generator;
using numeric::ComplexMatrix;
using numeric::cplx;
using numeric::cvec;
using numeric::multiply;
using numeric::operator_norm;
using numeric::subtract;

namespace {

cvec unit(std::size_t n, std::size_t k) {
    cvec v(n, cplx{0.0, 0.0});
    v[k] = 1.0;
    return v;
}

} // namespace

TEST_CASE("semigroup_at basics and heat norm decay") {
    auto t = build_heat_triple(100);
    auto gen = restrict_generator(t);
    CHECK(testsup::max_abs_diff(semigroup_at(gen, 0.0), ComplexMatrix::identity(t.n)) == 0.0);
    CHECK_THROWS_AS(semigroup_at(gen, -0.5), NegativeTime);

    for (double tt : {0.5, 1.0, 2.0}) {
        const double nrm = operator_norm(semigroup_at(gen, tt));
        CHECK(std::abs(nrm - std::exp(-tt / 4.0)) < 4e-3 * std::exp(-tt / 4.0));
        CHECK(nrm == doctest::Approx(std::exp(tt * gen.growth_bound)).epsilon(1e-9));
    }
}

TEST_CASE("semigroup law on the heat generator") {
    auto gen = restrict_generator(build_heat_triple(60));
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    for (int rep = 0; rep < 3; ++rep) {
        const double s = uni(rng);
        const double tt = uni(rng);
        ComplexMatrix lhs = semigroup_at(gen, s + tt);
        ComplexMatrix rhs = multiply(semigroup_at(gen, s), semigroup_at(gen, tt));
        CHECK(operator_norm(subtract(lhs, rhs)) <= 1e-9);
    }
}

TEST_CASE("control_map trivial and constant-input cases") {
    auto zero = make_generator(ComplexMatrix(3, 3), "zero");
    const TimeGrid grid(1.0, 100);

    SignalSamples off = constant_signal(grid, 0.0);
    cvec phi = control_map(zero, unit(3, 0), off);
    for (const auto& z : phi) CHECK(std::abs(z) == 0.0);

    SignalSamples on = constant_signal(grid, 1.0);
    phi = control_map(zero, unit(3, 0), on);
    CHECK(std::abs(phi[0] - 1.0) < 1e-12);
    CHECK(std::abs(phi[1]) < 1e-15);
}

TEST_CASE("control_map matches the steady-state formula on the heat triple") {
    auto t = build_heat_triple(100);
    auto gen = restrict_generator(t);
    auto d = dirichlet_operator(t, 1.0);
    const cvec b_bal = gen.to_matrix_coords(d.B);

    // -A^{-1} (I - T(t)) B, evaluated spectrally in the generator frame
    const auto sd = numeric::eig_hermitian(gen.matrix);
    cvec ref(t.n, cplx{0.0, 0.0});
    {
        cvec coeff(t.n);
        for (std::size_t k = 0; k < t.n; ++k) {
            cplx proj{0.0, 0.0};
            for (std::size_t i = 0; i < t.n; ++i) {
                proj += std::conj(sd.eigenvectors(i, k)) * b_bal[i];
            }
            coeff[k] = proj * (std::exp(0.5 * sd.eigenvalues[k]) - 1.0) / sd.eigenvalues[k];
        }
        for (std::size_t i = 0; i < t.n; ++i) {
            for (std::size_t k = 0; k < t.n; ++k) {
                ref[i] += sd.eigenvectors(i, k) * coeff[k];
            }
        }
    }

    double e400, e800;
    {
        SignalSamples u(TimeGrid(0.5, 400), 1);
        for (auto& v : u.values) v[0] = 1.0;
        cvec got = control_map(gen, b_bal, u);
        cvec diff(t.n);
        for (std::size_t i = 0; i < t.n; ++i) diff[i] = got[i] - ref[i];
        e400 = numeric::norm2(diff) / numeric::norm2(ref);
    }
    {
        SignalSamples u(TimeGrid(0.5, 800), 1);
        for (auto& v : u.values) v[0] = 1.0;
        cvec got = control_map(gen, b_bal, u);
        cvec diff(t.n);
        for (std::size_t i = 0; i < t.n; ++i) diff[i] = got[i] - ref[i];
        e800 = numeric::norm2(diff) / numeric::norm2(ref);
    }
    CHECK(e400 <= 2.5e-3);
    CHECK(e800 < e400 / 2.0);
}

TEST_CASE("observation_map basics") {
    auto t = build_heat_triple(80);
    auto gen = restrict_generator(t);
    const TimeGrid grid(1.0, 50);

    cvec zero_row(t.n, cplx{0.0, 0.0});
    cvec x0 = testsup::random_vector(t.n, 5);
    SignalSamples y = observation_map(gen, zero_row, x0, grid);
    for (const auto& v : y.values) CHECK(std::abs(v[0]) == 0.0);

    auto scalar = make_generator(ComplexMatrix::diagonal(cvec{-1.0}), "scalar");
    SignalSamples ys = observation_map(scalar, cvec{1.0}, cvec{1.0}, grid);
    for (std::size_t i = 0; i <= grid.steps; ++i) {
        CHECK(std::abs(ys.values[i][0] - std::exp(-grid.time(i))) < 1e-12);
    }

    // first eigenvector evolves by its eigenvalue
    const auto sd = numeric::eig_hermitian(gen.matrix);
    cvec v1(t.n);
    for (std::size_t i = 0; i < t.n; ++i) v1[i] = sd.eigenvectors(i, t.n - 1);
    cvec c_row = testsup::random_vector(t.n, 6);
    SignalSamples ye = observation_map(gen, c_row, v1, grid);
    cplx c_dot_v{0.0, 0.0};
    for (std::size_t i = 0; i < t.n; ++i) c_dot_v += c_row[i] * v1[i];
    const double lam1 = sd.eigenvalues.back();
    CHECK(std::abs(lam1 + 0.25) < 3e-3);
    for (std::size_t i = 0; i <= grid.steps; i += 10) {
        CHECK(std::abs(ye.values[i][0] - c_dot_v * std::exp(lam1 * grid.time(i))) < 1e-8);
    }
}

TEST_CASE("input_output_map scalar oracle and causality") {
    auto scalar = make_generator(ComplexMatrix::diagonal(cvec{-1.0}), "scalar");
    const TimeGrid grid(2.0, 200);
    SignalSamples u = constant_signal(grid, 1.0);
    SignalSamples y = input_output_map(scalar, cvec{1.0}, cvec{1.0}, u);
    for (std::size_t i = 0; i <= grid.steps; i += 20) {
        CHECK(std::abs(y.values[i][0] - (1.0 - std::exp(-grid.time(i)))) < 1e-4);
    }

    SignalSamples u0 = constant_signal(grid, 0.0);
    SignalSamples y0 = input_output_map(scalar, cvec{1.0}, cvec{1.0}, u0);
    for (const auto& v : y0.values) CHECK(std::abs(v[0]) == 0.0);

    // causality: tail perturbation leaves the prefix bit-identical
    auto t = build_heat_triple(40);
    SignalSamples ua(TimeGrid(1.0, 64), 1);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& v : ua.values) v[0] = cplx{g(rng), g(rng)};
    SignalSamples ub = ua;
    const std::size_t cut = 40;
    for (std::size_t i = cut + 1; i <= 64; ++i) ub.values[i][0] += cplx{g(rng), 0.0};
    SignalSamples ya = input_output_map(t, ua);
    SignalSamples yb = input_output_map(t, ub);
    for (std::size_t i = 0; i <= cut; ++i) {
        CHECK(ya.values[i][0] == yb.values[i][0]);
    }
}

TEST_CASE("transfer_function matches the closed form and stays bounded") {
    auto t = build_heat_triple(150);
    TransferSample h1 = transfer_function(t, 1.0);
    CHECK(std::abs(h1.H - std::tanh(M_PI)) < 2e-3);
    TransferSample h4 = transfer_function(t, 4.0);
    CHECK(std::abs(h4.H - std::tanh(2.0 * M_PI) / 2.0) < 2e-3);

    const auto spec = boundary::openloop_spectrum(t);
    double sup = 0.0;
    for (double re = 1.0; re <= 100.0; re += 11.0) {
        for (double im = -100.0; im <= 100.0; im += 25.0) {
            const auto d = dirichlet_operator(t, cplx{re, im}, spec);
            sup = std::max(sup, std::abs(t.apply_row(t.M, d.lift)));
        }
    }
    CHECK(sup <= 1.1);

    // same composition through the two call paths agrees exactly
    auto sc = spectrum_condition(t, cplx{3.0, 2.0}, spec);
    TransferSample h32 = transfer_function(t, cplx{3.0, 2.0});
    CHECK(std::abs(sc.m - h32.H) <= 1e-8);
}

TEST_CASE("laplace transform of the io map reproduces the transfer function") {
    auto t = build_heat_triple(100);
    const TimeGrid grid(8.0, 8000);
    SignalSamples u(grid, 1);
    for (std::size_t i = 0; i <= grid.steps; ++i) u.values[i][0] = std::exp(-grid.time(i));
    SignalSamples y = input_output_map(t, u);
    for (double lam : {2.0, 4.0}) {
        cplx yhat{0.0, 0.0};
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            yhat += grid.weight(i) * y.values[i][0] * std::exp(-lam * grid.time(i));
        }
        const cplx uhat = 1.0 / (lam + 1.0);
        const cplx ref = transfer_function(t, lam).H * uhat;
        CHECK(std::abs(yhat - ref) <= 0.02 * std::abs(ref));
    }
}

TEST_CASE("regularity probe vanishes at the origin") {
    auto t = build_heat_triple(100);
    const rvec tg{0.1, 0.05, 0.025};

    RegularityProbe zero = regularity_probe(t, 0.0, tg);
    for (double a : zero.averages) CHECK(a == 0.0);

    RegularityProbe p = regularity_probe(t, 1.0, tg);
    CHECK(p.averages[0] > p.averages[1]);
    CHECK(p.averages[1] > p.averages[2]);
    CHECK(p.averages[2] < 0.5 * p.averages[0]);

    auto scalar = make_generator(ComplexMatrix::diagonal(cvec{-1.0}), "scalar");
    RegularityProbe ps = regularity_probe(scalar, cvec{1.0}, cvec{1.0}, 1.0, tg);
    for (std::size_t i = 0; i < tg.size(); ++i) {
        const double exact = 1.0 - (1.0 - std::exp(-tg[i])) / tg[i];
        CHECK(std::abs(ps.averages[i] - exact) < 1e-4);
    }
}

TEST_CASE("vcf residual is small and shrinks under step doubling") {
    auto t = build_heat_triple(100);
    const double r400 = vcf_residual(t, 0.5, TimeGrid(0.5, 400));
    const double r800 = vcf_residual(t, 0.5, TimeGrid(0.5, 800));
    CHECK(r400 <= 5e-3);
    CHECK(r800 < r400 / 1.8);

    BoundaryTriple m0 = t;
    m0.M.assign(t.n + 1, cplx{0.0, 0.0});
    CHECK(vcf_residual(m0, 0.5, TimeGrid(0.5, 200)) <= 1e-12);

    CHECK(vcf_residual(t, 0.0, TimeGrid(0.5, 200)) == 0.0);
    CHECK_THROWS_AS(vcf_residual(t, 0.4, TimeGrid(0.5, 200)), GridMismatch);

    // the identity-conjugated form coincides up to quadrature error
    const double rj = vcf_residual_convolution_form(t, 0.5, TimeGrid(0.5, 400));
    CHECK(rj <= 5e-3);
    CHECK(rj <= 5.0 * r400);
    CHECK(r400 <= 5.0 * rj);
}

TEST_CASE("feedback well-posedness check") {
    auto t = build_heat_triple(60);

    // C = 0 gives F = 0 and inverse norm 1
    auto gen = restrict_generator(t);
    cvec zero_row(t.n, cplx{0.0, 0.0});
    cvec b(t.n, cplx{0.0, 0.0});
    b[0] = 1.0;
    FeedbackReport r0 = feedback_wellposed_check(gen, b, zero_row, TimeGrid(1.0, 50));
    CHECK(r0.inverse_norm == doctest::Approx(1.0));
    CHECK(r0.uniformly_bounded);

    FeedbackReport rh = feedback_wellposed_check(t, TimeGrid(1.0, 200));
    CHECK(rh.uniformly_bounded);
    FeedbackReport rh2 = feedback_wellposed_check(t, TimeGrid(1.0, 400));
    CHECK(rh2.uniformly_bounded);
    // bounded uniformly across refinement
    CHECK(std::abs(rh2.inverse_norm - rh.inverse_norm) < 0.25 * rh.inverse_norm);

    // scalar Volterra oracle: (I-F)^{-1} applied to 1 equals 1 + t
    auto scalar = make_generator(ComplexMatrix::diagonal(cvec{-1.0}), "scalar");
    const TimeGrid grid(2.0, 200);
    const std::size_t m = grid.samples();
    ComplexMatrix f(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        SignalSamples impulse(grid, 1);
        impulse.values[j][0] = 1.0;
        SignalSamples col = input_output_map(scalar, cvec{1.0}, cvec{1.0}, impulse);
        for (std::size_t i = 0; i < m; ++i) f(i, j) = col.values[i][0];
    }
    ComplexMatrix lhs = subtract(ComplexMatrix::identity(m), f);
    cvec ones(m, cplx{1.0, 0.0});
    cvec v = numeric::solve_linear(lhs, ones);
    for (std::size_t i = 0; i < m; i += 20) {
        CHECK(std::abs(v[i] - (1.0 + grid.time(i))) < 2e-3);
    }
}
