#include "semilab/numeric/solve.hpp"

#include <cmath>
#include <numeric>

namespace semilab::numeric {

namespace {
constexpr double kPivotRel = 1e-13;
}

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve_linear: A not square");
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: rhs rows differ");
    const std::size_t n = a.rows();
    if (n == 0) return b;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(a(i, j));
        scale = std::max(scale, s);
    }
    const double pivot_floor = kPivotRel * scale;

    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    const std::size_t m = b.cols();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > pivot_floor)) {
            throw SingularMatrix("solve_linear: pivot below threshold");
        }
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(piv, j));
        }
        const cplx inv_p = 1.0 / lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) * inv_p;
            if (f == cplx{0.0, 0.0}) continue;
            lu(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
        }
    }

    for (std::size_t ii = n; ii-- > 0;) {
        const cplx inv_p = 1.0 / lu(ii, ii);
        for (std::size_t j = 0; j < m; ++j) {
            cplx acc = x(ii, j);
            for (std::size_t l = ii + 1; l < n; ++l) acc -= lu(ii, l) * x(l, j);
            x(ii, j) = acc * inv_p;
        }
    }
    return x;
}

cvec solve_linear(const ComplexMatrix& a, const cvec& b) {
    ComplexMatrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    ComplexMatrix sol = solve_linear(a, rhs);
    cvec out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = sol(i, 0);
    return out;
}

} // namespace semilab::numeric
