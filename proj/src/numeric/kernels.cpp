#include "semilab/numeric/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace semilab::numeric {

namespace {

// One output entry of a matrix product. Shared by the parallel and serial
// drivers so both produce identical floating-point results.
inline cplx product_entry(const ComplexMatrix& a, const ComplexMatrix& b,
                          std::size_t i, std::size_t j) {
    const std::size_t k = a.cols();
    const cplx* arow = a.row_ptr(i);
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < k; ++l) {
        acc += arow[l] * b(l, j);
    }
    return acc;
}

inline void check_product_dims(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("multiply: inner dimensions differ");
    }
}

constexpr std::size_t kParallelCutoff = 64 * 64;

} // namespace

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_product_dims(a, b);
    ComplexMatrix c(a.rows(), b.cols());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(a.rows());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(b.cols());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.rows() * b.cols() >= kParallelCutoff)
#endif
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                product_entry(a, b, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return c;
}

ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_product_dims(a, b);
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            c(i, j) = product_entry(a, b, i, j);
        }
    }
    return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("add: shapes differ");
    }
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("subtract: shapes differ");
    }
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
    ComplexMatrix c = a;
    for (auto& z : c.data()) z *= factor;
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(j, i) = std::conj(a(i, j));
        }
    }
    return c;
}

cvec apply(const ComplexMatrix& a, const cvec& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("apply: size mismatch");
    cvec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const cplx* row = a.row_ptr(i);
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

cvec apply_left(const cvec& r, const ComplexMatrix& a) {
    if (a.rows() != r.size()) throw DimensionMismatch("apply_left: size mismatch");
    cvec y(a.cols(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const cplx ri = r[i];
        if (ri == cplx{0.0, 0.0}) continue;
        const cplx* row = a.row_ptr(i);
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += ri * row[j];
    }
    return y;
}

cplx dot(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm2(const cvec& x) {
    double acc = 0.0;
    for (const auto& z : x) acc += std::norm(z);
    return std::sqrt(acc);
}

double frobenius_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (const auto& z : a.data()) acc += std::norm(z);
    return std::sqrt(acc);
}

double inf_norm(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

double one_norm(const ComplexMatrix& a) {
    std::vector<double> col(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) col[j] += std::abs(a(i, j));
    }
    double m = 0.0;
    for (double s : col) m = std::max(m, s);
    return m;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix outer(const cvec& col, const cvec& row) {
    ComplexMatrix c(col.size(), row.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            c(i, j) = col[i] * row[j];
        }
    }
    return c;
}

bool is_diagonal(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j && a(i, j) != cplx{0.0, 0.0}) return false;
        }
    }
    return true;
}

} // namespace semilab::numeric
