#include <doctest.h>

#include <cmath>

#include "oracle_roots.hpp"
#include "semilab/boundary/dirichlet.hpp"
#include "semilab/boundary/generator.hpp"
#include "semilab/boundary/triple.hpp"
#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"
#include "test_support.hpp"

using namespace semilab;
using namespace semilab::boundary;
using numeric::adjoint;
using numeric::eig_hermitian;
using numeric::multiply;
using numeric::operator_norm;
using numeric::singular_values;
using numeric::solve_linear;

namespace {

cvec sample(const BoundaryTriple& t, double (*f)(double)) {
    cvec v(t.n + 1);
    for (std::size_t j = 0; j <= t.n; ++j) v[j] = f(t.grid[j]);
    return v;
}

ComplexMatrix shifted_identity(cplx lambda, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = (i == j ? lambda : cplx{0.0, 0.0}) - a(i, j);
        }
    }
    return out;
}

} // namespace

TEST_CASE("heat triple stencils act as the continuous operators") {
    BoundaryTriple t8 = build_heat_triple(8);
    // G samples of cos(x/2): f'(0) = 0, so G applied is O(h^2)
    cvec c = sample(t8, [](double x) { return std::cos(0.5 * x); });
    CHECK(std::abs(t8.apply_row(t8.G, c)) < 0.6 * t8.h * t8.h);

    BoundaryTriple t = build_heat_triple(100);
    cvec s = sample(t, [](double x) { return std::sin(x); });
    cvec am_s = numeric::apply(t.Am, s);
    for (std::size_t j = 1; j <= t.n; ++j) {
        CHECK(std::abs(am_s[j] + std::sin(t.grid[j])) < 2.0 * t.h * t.h);
    }

    cvec lin = sample(t, [](double x) { return M_PI - x; });
    CHECK(std::abs(t.apply_row(t.M, lin) - cplx{-M_PI, 0.0}) < 1e-12);

    CHECK_THROWS_AS(build_heat_triple(7), GridTooSmall);
}

TEST_CASE("triple JSON round-trip") {
    BoundaryTriple t = build_heat_triple(12);
    BoundaryTriple u = triple_from_json(triple_to_json(t));
    CHECK(u.n == t.n);
    CHECK(u.scheme == t.scheme);
    CHECK(testsup::max_abs_diff(u.Am, t.Am) == 0.0);
    for (std::size_t j = 0; j <= t.n; ++j) {
        CHECK(u.G[j] == t.G[j]);
        CHECK(u.M[j] == t.M[j]);
    }
}

TEST_CASE("restrict_generator reproduces the Neumann-type spectrum") {
    BoundaryTriple t = build_heat_triple(200);
    Generator g = restrict_generator(t);
    const rvec eig = eig_hermitian(g.matrix).eigenvalues;
    for (int k = 0; k < 5; ++k) {
        const double exact = -std::pow(k + 0.5, 2.0);
        const double got = eig[eig.size() - 1 - k];
        CHECK(std::abs(got - exact) <= 1e-3 * std::abs(exact));
    }
    CHECK(g.growth_bound <= -0.24);
    CHECK(g.label == "boundary-restricted");
}

TEST_CASE("eigenvalues converge at second order") {
    // Richardson check on the worst tracked mode (k = 4).
    const double exact = -std::pow(4.5, 2.0);
    double err[3];
    std::size_t idx = 0;
    for (std::size_t n : {100u, 200u, 400u}) {
        BoundaryTriple t = build_heat_triple(n);
        const rvec eig = eig_hermitian(restrict_generator(t).matrix).eigenvalues;
        err[idx++] = std::abs(eig[eig.size() - 5] - exact);
    }
    CHECK(err[0] / err[1] > 3.0);   // ~4x per halving of h
    CHECK(err[1] / err[2] > 3.0);
    CHECK(err[0] / err[1] < 5.0);
    CHECK(err[1] / err[2] < 5.0);
}

TEST_CASE("generators with M = 0 or M = G collapse as expected") {
    BoundaryTriple t = build_heat_triple(40);

    BoundaryTriple m0 = t;
    m0.M.assign(t.n + 1, cplx{0.0, 0.0});
    CHECK(testsup::max_abs_diff(perturbed_generator(m0).matrix,
                                restrict_generator(t).matrix) < 1e-12);

    BoundaryTriple mg = t;
    mg.M = t.G;
    // ker(G - M) degenerates when M = G: constraint row vanishes
    CHECK_THROWS_AS(perturbed_generator(mg), ConstraintEliminationFailed);

    // and a triple whose M has no boundary component perturbs like M = 0
    BoundaryTriple half = t;
    half.M.assign(t.n + 1, cplx{0.0, 0.0});
    for (std::size_t j = 0; j <= t.n; ++j) half.M[j] = 0.5 * t.G[j];
    CHECK(testsup::max_abs_diff(perturbed_generator(half).matrix,
                                restrict_generator(t).matrix) < 1e-12);
}

TEST_CASE("perturbed_generator matches the scalar root oracle") {
    BoundaryTriple t = build_heat_triple(400);
    Generator g = perturbed_generator(t);
    CHECK(g.label == "boundary-feedback");
    const rvec eig = eig_hermitian(g.matrix).eigenvalues;

    const auto oracle = testsup::perturbed_heat_eigenvalues(6);
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        const double got = eig[eig.size() - 1 - k];
        CHECK(std::abs(got - oracle[k]) <= 1e-3 * std::max(std::abs(oracle[k]), 1.0));
    }

    // Hermitian after symmetrization
    double asym = 0.0;
    for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
        for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
            asym = std::max(asym, std::abs(g.matrix(i, j) - std::conj(g.matrix(j, i))));
        }
    }
    CHECK(asym <= 1e-8 * numeric::max_abs(g.matrix));
}

TEST_CASE("dirichlet_operator reproduces the closed forms") {
    for (std::size_t n : {200u, 400u}) {
        BoundaryTriple t = build_heat_triple(n);
        const rvec spec = openloop_spectrum(t);
        struct Case {
            double lambda;
        } cases[] = {{0.0}, {1.0}, {4.0}};
        for (const auto& c : cases) {
            DirichletOperator d = dirichlet_operator(t, c.lambda, spec);
            double emax = 0.0, scale = 0.0;
            for (std::size_t j = 0; j <= t.n; ++j) {
                const double x = t.grid[j];
                double exact;
                if (c.lambda == 0.0) {
                    exact = x - M_PI;
                } else {
                    const double rl = std::sqrt(c.lambda);
                    exact = std::sinh(rl * (x - M_PI)) / (rl * std::cosh(rl * M_PI));
                }
                emax = std::max(emax, std::abs(d.lift[j] - exact));
                scale = std::max(scale, std::abs(exact));
            }
            const double tol = (n == 200) ? 1e-3 : 2.6e-4;
            CHECK(emax / scale <= tol);

            // invariants: G d = 1; interior residual of the bordered system
            CHECK(std::abs(t.apply_row(t.G, d.lift) - 1.0) <= 1e-8);
            cvec amd = numeric::apply(t.Am, d.lift);
            for (std::size_t j = 1; j <= t.n; ++j) {
                CHECK(std::abs(c.lambda * d.lift[j] - amd[j]) < 1e-7);
            }
        }
    }
}

TEST_CASE("dirichlet B column is lambda-independent and boundary-supported") {
    BoundaryTriple t = build_heat_triple(60);
    const rvec spec = openloop_spectrum(t);
    DirichletOperator d1 = dirichlet_operator(t, 1.0, spec);
    DirichletOperator d2 = dirichlet_operator(t, cplx{2.0, 3.0}, spec);
    for (std::size_t i = 0; i < t.n; ++i) {
        CHECK(std::abs(d1.B[i] - d2.B[i]) < 1e-7);
        if (i > 0) CHECK(std::abs(d1.B[i]) < 1e-7);  // only the first node couples
    }
    CHECK(std::abs(d1.B[0] - cplx{-2.0 / (3.0 * t.h), 0.0}) < 1e-7);
}

TEST_CASE("dirichlet_operator rejects spectrum points") {
    BoundaryTriple t = build_heat_triple(50);
    const rvec spec = openloop_spectrum(t);
    CHECK_THROWS_AS(dirichlet_operator(t, spec.back(), spec), LambdaInSpectrum);
}

TEST_CASE("spectrum_condition matches tanh closed form and flags eigenvalues") {
    BoundaryTriple t = build_heat_triple(200);
    const rvec spec = openloop_spectrum(t);

    SpectrumCondition s1 = spectrum_condition(t, 1.0, spec);
    CHECK(std::abs(s1.m - std::tanh(M_PI)) < 2e-3);
    CHECK(s1.lambda_in_perturbed_resolvent);

    // at a perturbed eigenvalue the scalar is 1 to solver precision
    const rvec ev = eig_hermitian(perturbed_generator(t).matrix).eigenvalues;
    const double mu1sq = -ev[ev.size() - 2];  // first negative eigenvalue
    SpectrumCondition s2 = spectrum_condition(t, -mu1sq, spec);
    CHECK_FALSE(s2.lambda_in_perturbed_resolvent);

    // m -> 0 along the positive axis
    double prev = std::abs(spectrum_condition(t, 10.0, spec).m);
    for (double lam : {100.0, 1000.0}) {
        const double cur = std::abs(spectrum_condition(t, lam, spec).m);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("perturbed_resolvent agrees with the direct inversion route") {
    BoundaryTriple t = build_heat_triple(100);
    Generator pg = perturbed_generator(t);
    for (cplx lam : {cplx{1.0, 0.0}, cplx{2.0, 3.0}, cplx{10.0, 0.0}}) {
        ComplexMatrix via_feedback = perturbed_resolvent(t, lam);
        ComplexMatrix direct =
            solve_linear(shifted_identity(lam, pg.matrix), ComplexMatrix::identity(t.n));
        const double rel = operator_norm(numeric::subtract(via_feedback, direct)) /
                           operator_norm(direct);
        CHECK(rel <= 1e-6);
    }

    // off the real axis near a perturbed eigenvalue both routes still agree
    const auto oracle = testsup::perturbed_heat_eigenvalues(2);
    const cplx lam{oracle[1], 0.5};
    ComplexMatrix via_feedback = perturbed_resolvent(t, lam);
    ComplexMatrix direct =
        solve_linear(shifted_identity(lam, pg.matrix), ComplexMatrix::identity(t.n));
    CHECK(operator_norm(numeric::subtract(via_feedback, direct)) /
              operator_norm(direct) <=
          1e-6);
}

TEST_CASE("perturbed_resolvent with M = 0 is the open-loop resolvent") {
    BoundaryTriple t = build_heat_triple(30);
    t.M.assign(t.n + 1, cplx{0.0, 0.0});
    Generator g = restrict_generator(t);
    ComplexMatrix r = perturbed_resolvent(t, 1.0);
    ComplexMatrix ref =
        solve_linear(shifted_identity(1.0, g.matrix), ComplexMatrix::identity(t.n));
    CHECK(testsup::max_abs_diff(r, ref) < 1e-12);
}

TEST_CASE("resolvent difference is numerically rank one") {
    BoundaryTriple t = build_heat_triple(100);
    Generator open = restrict_generator(t);
    ComplexMatrix r_open = solve_linear(shifted_identity(1.0, open.node_matrix()),
                                        ComplexMatrix::identity(t.n));
    ComplexMatrix r_cl = perturbed_resolvent_node(t, 1.0);
    const rvec sv = singular_values(numeric::subtract(r_cl, r_open));
    REQUIRE(sv.size() >= 2);
    CHECK(sv[1] < 1e-8 * sv[0]);
    CHECK(sv[0] > 1e-8 * operator_norm(r_open));
}

TEST_CASE("feedback singularity is reported at perturbed eigenvalues") {
    BoundaryTriple t = build_heat_triple(150);
    const rvec ev = eig_hermitian(perturbed_generator(t).matrix).eigenvalues;
    const double lam = ev.back();  // positive eigenvalue, not in open-loop spectrum
    CHECK_THROWS_AS(perturbed_resolvent(t, lam), FeedbackSingular);
}
