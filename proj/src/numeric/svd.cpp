#include "semilab/numeric/svd.hpp"

#include <algorithm>
#include <cmath>

#include "semilab/numeric/kernels.hpp"

namespace semilab::numeric {

namespace {

constexpr int kMaxIts = 80;

double pythag(double a, double b) { return std::hypot(a, b); }

// Reduce to upper bidiagonal form; returns |diagonal| and |superdiagonal|.
// Diagonal phase similarities on both sides make the bidiagonal real without
// changing singular values, so magnitudes suffice.
void bidiagonalize(ComplexMatrix a, rvec& d, rvec& e) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    cvec v(std::max(m, n));

    for (std::size_t k = 0; k < n; ++k) {
        // Left reflector on column k.
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) xnorm2 += std::norm(a(i, k));
        if (xnorm2 > 0.0) {
            const double xnorm = std::sqrt(xnorm2);
            const cplx x0 = a(k, k);
            const double x0abs = std::abs(x0);
            const cplx phase = (x0abs > 0.0) ? x0 / x0abs : cplx{1.0, 0.0};
            const cplx alpha = -phase * xnorm;
            double vnorm2 = 0.0;
            for (std::size_t i = k; i < m; ++i) {
                v[i] = a(i, k);
                if (i == k) v[i] -= alpha;
                vnorm2 += std::norm(v[i]);
            }
            if (vnorm2 > 0.0) {
                const double tau = 2.0 / vnorm2;
                for (std::size_t j = k; j < n; ++j) {
                    cplx acc{0.0, 0.0};
                    for (std::size_t i = k; i < m; ++i) acc += std::conj(v[i]) * a(i, j);
                    acc *= tau;
                    for (std::size_t i = k; i < m; ++i) a(i, j) -= acc * v[i];
                }
            }
            a(k, k) = alpha;
            d[k] = std::abs(alpha);
        }

        // Right reflector on row k (columns k+1..n-1).
        if (k + 1 < n) {
            double ynorm2 = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) ynorm2 += std::norm(a(k, j));
            if (ynorm2 > 0.0) {
                const double ynorm = std::sqrt(ynorm2);
                const cplx y0 = std::conj(a(k, k + 1));
                const double y0abs = std::abs(y0);
                const cplx phase = (y0abs > 0.0) ? y0 / y0abs : cplx{1.0, 0.0};
                const cplx alpha = -phase * ynorm;
                double vnorm2 = 0.0;
                for (std::size_t j = k + 1; j < n; ++j) {
                    v[j] = std::conj(a(k, j));
                    if (j == k + 1) v[j] -= alpha;
                    vnorm2 += std::norm(v[j]);
                }
                if (vnorm2 > 0.0) {
                    const double tau = 2.0 / vnorm2;
                    for (std::size_t i = k; i < m; ++i) {
                        cplx acc{0.0, 0.0};
                        for (std::size_t j = k + 1; j < n; ++j) acc += a(i, j) * v[j];
                        acc *= tau;
                        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= acc * std::conj(v[j]);
                    }
                }
                a(k, k + 1) = std::conj(alpha);
                e[k] = std::abs(alpha);
            }
        }
    }
}

// Implicit-shift QR on the bidiagonal (values only); classic Golub-Kahan
// sweep in the svdcmp arrangement: rv1[i] couples w[i-1] and w[i].
rvec bidiagonal_values(rvec w, const rvec& e) {
    const std::size_t n = w.size();
    rvec rv1(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) rv1[i] = e[i - 1];

    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(w[i]) + std::abs(rv1[i]));
    const double eps = 1e-15 * std::max(anorm, 1e-300);

    for (std::size_t k = n; k-- > 0;) {
        for (int its = 0;; ++its) {
            bool flag = true;
            std::size_t l = k + 1;
            std::size_t nm = 0;
            while (l-- > 0) {
                nm = l - 1; // only read when l > 0
                if (std::abs(rv1[l]) <= eps) {
                    flag = false;
                    break;
                }
                if (std::abs(w[nm]) <= eps) break;
            }
            if (flag) {
                // w[l-1] negligible: rotate rv1[l..k] away from the left.
                double c = 0.0, s = 1.0;
                for (std::size_t i = l; i <= k; ++i) {
                    const double f = s * rv1[i];
                    rv1[i] = c * rv1[i];
                    if (std::abs(f) <= eps) break;
                    const double g = w[i];
                    const double h = pythag(f, g);
                    w[i] = h;
                    const double hi = 1.0 / h;
                    c = g * hi;
                    s = -f * hi;
                }
            }
            const double z = w[k];
            if (l == k) {
                if (z < 0.0) w[k] = -z;
                break;
            }
            if (its == kMaxIts) throw NoConvergence("singular_values: QR iteration cap");

            double x = w[l];
            nm = k - 1;
            double y = w[nm];
            double g = rv1[nm];
            double h = rv1[k];
            double f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
            g = pythag(f, 1.0);
            f = ((x - z) * (x + z) + h * (y / (f + std::copysign(g, f)) - h)) / x;
            double c = 1.0, s = 1.0;
            for (std::size_t j = l; j <= nm; ++j) {
                const std::size_t i = j + 1;
                g = rv1[i];
                y = w[i];
                h = s * g;
                g = c * g;
                double zz = pythag(f, h);
                rv1[j] = zz;
                c = f / zz;
                s = h / zz;
                f = x * c + g * s;
                g = g * c - x * s;
                h = y * s;
                y *= c;
                zz = pythag(f, h);
                w[j] = zz;
                if (zz != 0.0) {
                    const double zi = 1.0 / zz;
                    c = f * zi;
                    s = h * zi;
                }
                f = c * g + s * y;
                x = c * y - s * g;
            }
            rv1[l] = 0.0;
            rv1[k] = f;
            w[k] = x;
        }
    }

    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}

} // namespace

rvec singular_values(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return {};
    if (!a.all_finite()) throw NonFiniteEntry("singular_values: non-finite entry");

    rvec d, e;
    if (a.rows() >= a.cols()) {
        bidiagonalize(a, d, e);
    } else {
        bidiagonalize(adjoint(a), d, e);
    }
    return bidiagonal_values(std::move(d), e);
}

double operator_norm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const rvec sv = singular_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

} // namespace semilab::numeric
