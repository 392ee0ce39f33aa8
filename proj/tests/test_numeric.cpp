#include <doctest.h>

#include <cmath>
#include <complex>

#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"
#include "test_support.hpp"

using namespace semilab;
using namespace semilab::numeric;
using testsup::max_abs_diff;
using testsup::random_hermitian;
using testsup::random_matrix;
using testsup::random_vector;

TEST_CASE("multiply matches serial reference bitwise") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        ComplexMatrix a = random_matrix(67, 41, seed);
        ComplexMatrix b = random_matrix(41, 89, seed + 100);
        ComplexMatrix p = multiply(a, b);
        ComplexMatrix q = multiply_serial(a, b);
        CHECK(max_abs_diff(p, q) == 0.0);
    }
    CHECK_THROWS_AS(multiply(random_matrix(3, 4, 1), random_matrix(3, 4, 2)), DimensionMismatch);
}

TEST_CASE("complex matrix construction validates") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, cvec{1.0, 2.0, 3.0}), DimensionMismatch);
    cvec bad{1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(ComplexMatrix(2, 2, bad), NonFiniteEntry);
}

TEST_CASE("solve_linear identity and diagonal cases") {
    ComplexMatrix b = random_matrix(3, 2, 7);
    ComplexMatrix x = solve_linear(ComplexMatrix::identity(3), b);
    CHECK(max_abs_diff(x, b) < 1e-14);

    ComplexMatrix a = ComplexMatrix::diagonal(cvec{2.0, 4.0});
    ComplexMatrix rhs(2, 1, cvec{2.0, 4.0});
    ComplexMatrix sol = solve_linear(a, rhs);
    CHECK(std::abs(sol(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(sol(1, 0) - 1.0) < 1e-15);
}

TEST_CASE("solve_linear recovers a planted solution") {
    // Well-conditioned: random matrix shifted by a multiple of the identity.
    ComplexMatrix a = random_matrix(20, 20, 11);
    for (std::size_t i = 0; i < 20; ++i) a(i, i) += 12.0;
    ComplexMatrix xstar = random_matrix(20, 3, 13);
    ComplexMatrix b = multiply(a, xstar);
    ComplexMatrix x = solve_linear(a, b);
    CHECK(max_abs_diff(x, xstar) < 1e-10 * frobenius_norm(xstar));
}

TEST_CASE("solve_linear errors") {
    ComplexMatrix sing(2, 2, cvec{1.0, 2.0, 2.0, 4.0});
    CHECK_THROWS_AS(solve_linear(sing, ComplexMatrix::identity(2)), SingularMatrix);
    CHECK_THROWS_AS(solve_linear(random_matrix(3, 2, 1), ComplexMatrix::identity(3)),
                    DimensionMismatch);
    CHECK_THROWS_AS(solve_linear(ComplexMatrix::identity(3), ComplexMatrix::identity(2)),
                    DimensionMismatch);
}

TEST_CASE("solve round-trips multiply on well-conditioned inputs") {
    for (std::uint64_t seed : {5u, 6u}) {
        ComplexMatrix a = random_matrix(30, 30, seed);
        for (std::size_t i = 0; i < 30; ++i) a(i, i) += 15.0;
        ComplexMatrix x = random_matrix(30, 4, seed + 50);
        ComplexMatrix back = solve_linear(a, multiply(a, x));
        CHECK(max_abs_diff(back, x) <= 1e-9 * frobenius_norm(x));
    }
}

TEST_CASE("eig_hermitian diagonal and swap examples") {
    SpectralDecomposition d = eig_hermitian(ComplexMatrix::diagonal(cvec{3.0, 1.0, 2.0}));
    REQUIRE(d.eigenvalues.size() == 3);
    CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(d.eigenvalues[2] == doctest::Approx(3.0));

    ComplexMatrix sw(2, 2, cvec{0.0, 1.0, 1.0, 0.0});
    SpectralDecomposition s = eig_hermitian(sw);
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian invariants on random Hermitian matrices") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        const std::size_t n = 40;
        ComplexMatrix a = random_hermitian(n, seed);
        SpectralDecomposition sd = eig_hermitian(a);
        const double anorm = frobenius_norm(a);

        // residual A v_k = lambda_k v_k
        ComplexMatrix av = multiply(a, sd.eigenvectors);
        double resid = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                resid = std::max(resid,
                                 std::abs(av(i, k) - sd.eigenvalues[k] * sd.eigenvectors(i, k)));
            }
        }
        CHECK(resid <= 1e-10 * anorm);

        // orthonormal columns
        ComplexMatrix gram = multiply(adjoint(sd.eigenvectors), sd.eigenvectors);
        CHECK(max_abs_diff(gram, ComplexMatrix::identity(n)) <= 1e-10);

        // ascending
        for (std::size_t k = 1; k < n; ++k) {
            CHECK(sd.eigenvalues[k - 1] <= sd.eigenvalues[k]);
        }
    }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    ComplexMatrix a(2, 2, cvec{1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(eig_hermitian(a), NotHermitian);
}

TEST_CASE("matrix_exponential trivial cases") {
    ComplexMatrix a = random_matrix(5, 5, 31);
    CHECK(max_abs_diff(matrix_exponential(a, 0.0), ComplexMatrix::identity(5)) == 0.0);

    ComplexMatrix d = ComplexMatrix::diagonal(cvec{-1.0, -2.0});
    ComplexMatrix e = matrix_exponential(d, 1.0);
    CHECK(std::abs(e(0, 0) - std::exp(-1.0)) < 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(-2.0)) < 1e-14);
    CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("matrix_exponential matches the spectral route for Hermitian input") {
    for (std::uint64_t seed : {41u, 42u}) {
        const std::size_t n = 25;
        ComplexMatrix a = random_hermitian(n, seed);
        SpectralDecomposition sd = eig_hermitian(a);
        for (double t : {0.3, 1.7}) {
            ComplexMatrix lam(n, n);
            for (std::size_t k = 0; k < n; ++k) lam(k, k) = std::exp(t * sd.eigenvalues[k]);
            ComplexMatrix ref =
                multiply(sd.eigenvectors, multiply(lam, adjoint(sd.eigenvectors)));
            ComplexMatrix got = matrix_exponential(a, t);
            CHECK(max_abs_diff(got, ref) <= 1e-10 * frobenius_norm(ref));
        }
    }
}

TEST_CASE("matrix_exponential norm and semigroup invariants") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    for (std::uint64_t seed : {51u, 52u}) {
        ComplexMatrix a = random_hermitian(15, seed);
        SpectralDecomposition sd = eig_hermitian(a);
        const double lmax = sd.eigenvalues.back();
        for (double t : {0.5, 2.0, 5.0}) {
            const double nrm = operator_norm(matrix_exponential(a, t));
            CHECK(nrm == doctest::Approx(std::exp(t * lmax)).epsilon(1e-9));
        }
        const double s = uni(rng);
        const double t = uni(rng);
        ComplexMatrix lhs = matrix_exponential(a, s + t);
        ComplexMatrix rhs = multiply(matrix_exponential(a, s), matrix_exponential(a, t));
        CHECK(max_abs_diff(lhs, rhs) <= 1e-9 * frobenius_norm(lhs));
    }
}

TEST_CASE("matrix_exponential dimension check") {
    CHECK_THROWS_AS(matrix_exponential(random_matrix(2, 3, 1), 1.0), DimensionMismatch);
}

TEST_CASE("singular_values basics") {
    rvec id = singular_values(ComplexMatrix::identity(4));
    for (double v : id) CHECK(v == doctest::Approx(1.0));

    rvec d = singular_values(ComplexMatrix::diagonal(cvec{3.0, -4.0}));
    CHECK(d[0] == doctest::Approx(4.0));
    CHECK(d[1] == doctest::Approx(3.0));
}

TEST_CASE("singular_values agree with the Gram-matrix oracle") {
    for (std::uint64_t seed : {61u, 62u, 63u}) {
        ComplexMatrix a = random_matrix(30, 30, seed);
        rvec sv = singular_values(a);
        SpectralDecomposition gram = eig_hermitian(multiply(adjoint(a), a));
        const double scale2 = gram.eigenvalues.back();
        REQUIRE(sv.size() == 30);
        for (std::size_t k = 0; k < 30; ++k) {
            const double lam = std::max(gram.eigenvalues[30 - 1 - k], 0.0);
            CHECK(std::abs(sv[k] * sv[k] - lam) <= 1e-10 * scale2);
        }
        // descending
        for (std::size_t k = 1; k < sv.size(); ++k) CHECK(sv[k - 1] >= sv[k]);
    }
}

TEST_CASE("singular_values of rectangular matrices match transposed input") {
    ComplexMatrix a = random_matrix(12, 30, 71);
    rvec s1 = singular_values(a);
    rvec s2 = singular_values(adjoint(a));
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-12));
    }
}

TEST_CASE("operator_norm basics and submultiplicativity") {
    CHECK(operator_norm(ComplexMatrix(3, 3)) == 0.0);
    CHECK(operator_norm(ComplexMatrix::diagonal(cvec{1.0, 5.0})) == doctest::Approx(5.0));
    for (std::uint64_t seed : {81u, 82u, 83u}) {
        ComplexMatrix a = random_matrix(15, 15, seed);
        ComplexMatrix b = random_matrix(15, 15, seed + 1000);
        CHECK(operator_norm(multiply(a, b)) <=
              operator_norm(a) * operator_norm(b) * (1.0 + 1e-12));
    }
}
