#include "semilab/boundary/generator.hpp"

#include <cmath>
#include <queue>
#include <random>

#include "semilab/numeric/eig.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"

namespace semilab::boundary {

using numeric::adjoint;
using numeric::eig_hermitian;
using numeric::frobenius_norm;
using numeric::is_diagonal;
using numeric::max_abs;
using numeric::multiply;

ComplexMatrix Generator::node_matrix() const {
    ComplexMatrix out = matrix;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(i, j) *= scale[j] / scale[i];
        }
    }
    return out;
}

cvec Generator::to_matrix_coords(const cvec& node_vec) const {
    cvec v = node_vec;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= scale[i];
    return v;
}

cvec Generator::from_matrix_coords(const cvec& matrix_vec) const {
    cvec v = matrix_vec;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] /= scale[i];
    return v;
}

namespace {

// Diagonal similarity H = D A D^{-1} removing the one-sided asymmetry the
// constraint elimination leaves near the boundary. Scale factors propagate
// along a spanning tree of the coupling graph; entries must pair up with a
// positive ratio for the similarity to exist.
void symmetrize_by_scaling(const ComplexMatrix& a, ComplexMatrix& h, rvec& d) {
    const std::size_t n = a.rows();
    const double tol_edge = 1e-14 * std::max(max_abs(a), 1e-300);
    d.assign(n, 0.0);
    std::vector<char> seen(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        d[root] = 1.0;
        seen[root] = 1;
        std::queue<std::size_t> bfs;
        bfs.push(root);
        while (!bfs.empty()) {
            const std::size_t i = bfs.front();
            bfs.pop();
            for (std::size_t j = 0; j < n; ++j) {
                if (seen[j]) continue;
                const cplx up = a(i, j);
                const cplx dn = a(j, i);
                if (std::abs(up) <= tol_edge && std::abs(dn) <= tol_edge) continue;
                if (std::abs(up) <= tol_edge || std::abs(dn) <= tol_edge) {
                    throw NotHermitian("symmetrize: one-sided coupling cannot be scaled away");
                }
                const cplx ratio = up / std::conj(dn);
                if (!(ratio.real() > 0.0) ||
                    std::abs(ratio.imag()) > 1e-8 * std::abs(ratio)) {
                    throw NotHermitian("symmetrize: coupling ratio not positive");
                }
                d[j] = d[i] * std::sqrt(ratio.real());
                seen[j] = 1;
                bfs.push(j);
            }
        }
    }
    h = a;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) *= d[i] / d[j];
        }
    }
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) asym += std::norm(h(i, j) - std::conj(h(j, i)));
    }
    if (std::sqrt(2.0 * asym) > 1e-10 * std::max(frobenius_norm(h), 1e-300)) {
        throw NotHermitian("symmetrize: residual asymmetry above tolerance");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const cplx m = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = m;
            h(j, i) = std::conj(m);
        }
        h(i, i) = cplx{h(i, i).real(), 0.0};
    }
}

Generator eliminate(const BoundaryTriple& t, const cvec& row, std::string label) {
    const cvec elim = t.elimination_row(row);
    const std::size_t n = t.n;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx couple = t.Am(i + 1, 0);
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = t.Am(i + 1, j + 1) + couple * elim[j];
        }
    }
    Generator g;
    symmetrize_by_scaling(a, g.matrix, g.scale);
    g.label = std::move(label);
    g.hermitian = true;
    g.growth_bound = eig_hermitian(g.matrix).eigenvalues.back();
    return g;
}

double power_growth_estimate(const ComplexMatrix& a) {
    const ComplexMatrix e = numeric::matrix_exponential(a, 1.0);
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    cvec v(a.rows());
    for (auto& z : v) z = cplx{gauss(rng), gauss(rng)};
    double rho = 0.0;
    for (int it = 0; it < 300; ++it) {
        cvec w = numeric::apply(e, v);
        const double nw = numeric::norm2(w);
        if (nw == 0.0) return -700.0;
        for (auto& z : w) z /= nw;
        v = std::move(w);
        rho = nw;
    }
    return std::log(rho);
}

} // namespace

Generator restrict_generator(const BoundaryTriple& triple) {
    return eliminate(triple, triple.G, "boundary-restricted");
}

Generator perturbed_generator(const BoundaryTriple& triple) {
    cvec row(triple.n + 1);
    for (std::size_t j = 0; j <= triple.n; ++j) row[j] = triple.G[j] - triple.M[j];
    return eliminate(triple, row, "boundary-feedback");
}

Generator make_generator(ComplexMatrix matrix, std::string label) {
    if (matrix.rows() != matrix.cols()) throw DimensionMismatch("make_generator: not square");
    Generator g;
    g.scale.assign(matrix.rows(), 1.0);
    g.label = std::move(label);

    double asym = 0.0;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            asym += std::norm(matrix(i, j) - std::conj(matrix(j, i)));
        }
    }
    g.hermitian =
        std::sqrt(2.0 * asym) <= 1e-10 * std::max(frobenius_norm(matrix), 1e-300);

    if (g.hermitian) {
        g.growth_bound = eig_hermitian(matrix).eigenvalues.back();
    } else if (is_diagonal(matrix)) {
        double m = -1e300;
        for (std::size_t i = 0; i < matrix.rows(); ++i) m = std::max(m, matrix(i, i).real());
        g.growth_bound = m;
    } else {
        g.growth_bound = power_growth_estimate(matrix);
    }
    g.matrix = std::move(matrix);
    return g;
}

rvec openloop_spectrum(const BoundaryTriple& triple) {
    return eig_hermitian(restrict_generator(triple).matrix).eigenvalues;
}

} // namespace semilab::boundary
