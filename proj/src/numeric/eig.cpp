#include "semilab/numeric/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semilab/numeric/kernels.hpp"

namespace semilab::numeric {

namespace {

constexpr int kMaxSweeps = 60;

double phypot(double a, double b) { return std::hypot(a, b); }

// Reduce the Hermitian matrix to real symmetric tridiagonal form by complex
// Householder reflections, accumulating the unitary transform in q.
void tridiagonalize(ComplexMatrix& a, ComplexMatrix& q, rvec& diag, rvec& off) {
    const std::size_t n = a.rows();
    q = ComplexMatrix::identity(n);
    cvec subdiag(n > 0 ? n - 1 : 0, cplx{0.0, 0.0});

    cvec v(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) {
            subdiag[k] = cplx{0.0, 0.0};
            continue;
        }
        const cplx x0 = a(k + 1, k);
        const double x0abs = std::abs(x0);
        const cplx phase = (x0abs > 0.0) ? x0 / x0abs : cplx{1.0, 0.0};
        const cplx alpha = -phase * xnorm;

        // v = x - alpha e1, tau = 2 / v*v
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) {
            subdiag[k] = alpha;
            continue;
        }
        const double tau = 2.0 / vnorm2;

        // two-sided update of the trailing block: A <- H A H
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) acc += a(i, j) * v[j];
            w[i] = tau * acc;
        }
        cplx kappa{0.0, 0.0};
        for (std::size_t i = k + 1; i < n; ++i) kappa += std::conj(v[i]) * w[i];
        kappa *= 0.5 * tau;
        for (std::size_t i = k + 1; i < n; ++i) w[i] -= kappa * v[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
            }
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = cplx{0.0, 0.0};
            a(k, i) = cplx{0.0, 0.0};
        }
        subdiag[k] = alpha;

        // Q <- Q H
        for (std::size_t r = 0; r < n; ++r) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) acc += q(r, j) * v[j];
            acc *= tau;
            for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= acc * std::conj(v[j]);
        }
    }
    if (n >= 2) subdiag[n - 2] = a(n - 1, n - 2);

    // Phase-scale columns so the subdiagonal becomes real nonnegative.
    diag.assign(n, 0.0);
    off.assign(n > 0 ? n - 1 : 0, 0.0);
    cplx phi{1.0, 0.0};
    cvec phases(n, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
        if (i + 1 < n) {
            const cplx e = subdiag[i];
            const double ea = std::abs(e);
            // T' = Phi* T Phi with phi_{i+1} = phi_i * e/|e|
            phi = (ea > 0.0) ? phases[i] * (e / ea) : phases[i];
            phases[i + 1] = phi;
            off[i] = ea;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (phases[j] == cplx{1.0, 0.0}) continue;
        for (std::size_t r = 0; r < n; ++r) q(r, j) *= phases[j];
    }
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of q.
void tql_with_vectors(rvec& d, rvec& e, ComplexMatrix& q) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    e.push_back(0.0);

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-17 * dd || e[m] == 0.0) break;
            }
            if (m != l) {
                if (iter++ == kMaxSweeps) throw NoConvergence("eig_hermitian: QL iteration cap");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = phypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (std::size_t i1 = m; i1-- > l;) {
                    double f = s * e[i1];
                    const double b = c * e[i1];
                    r = phypot(f, g);
                    e[i1 + 1] = r;
                    if (r == 0.0) {
                        d[i1 + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i1 + 1] - p;
                    r = (d[i1] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i1 + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < q.rows(); ++k) {
                        const cplx t = q(k, i1 + 1);
                        q(k, i1 + 1) = s * q(k, i1) + c * t;
                        q(k, i1) = c * q(k, i1) - s * t;
                    }
                }
                if (r == 0.0 && m - l > 1) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

} // namespace

SpectralDecomposition eig_hermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("eig_hermitian: not square");
    const std::size_t n = a.rows();
    const double nrm = frobenius_norm(a);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            asym += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    if (std::sqrt(2.0 * asym) > 1e-10 * std::max(nrm, 1e-300)) {
        throw NotHermitian("eig_hermitian: matrix is not Hermitian to tolerance");
    }

    // Work on the exactly Hermitian part so roundoff asymmetry cannot leak in.
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }

    SpectralDecomposition out;
    rvec d, e;
    tridiagonalize(h, out.eigenvectors, d, e);
    tql_with_vectors(d, e, out.eigenvectors);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    out.eigenvalues.resize(n);
    ComplexMatrix v(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i) v(i, j) = out.eigenvectors(i, order[j]);
    }
    out.eigenvectors = std::move(v);
    return out;
}

} // namespace semilab::numeric
