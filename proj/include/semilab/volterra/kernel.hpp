#pragma once

#include <vector>

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::volterra {

using numeric::cplx;
using numeric::cvec;
using numeric::rvec;

/// Sector Sigma_h = {sigma + i tau : sigma > 0, |tau| < h(sigma)} with the
/// power profile h(sigma) = a sigma^beta. beta >= 1 makes h increasing and
/// convex with h(0) = 0; integrability of h^{1-s} near 0 requires
/// beta (s - 1) < 1. The Bergman exponent is q = p s / (s - 1).
struct SectorProfile {
    double a = 1.0;
    double beta = 1.0;
    double s = 2.0;
    double p = 2.0;
    double q = 4.0;

    SectorProfile(double a_, double beta_, double s_, double p_);

    double h(double sigma) const;
};

/// Exponential-polynomial kernel k(z) = sum c_j z^{m_j} exp(-a_j z) with
/// Re a_j > 0, so every term is holomorphic and decaying on each sector.
/// The family is closed under the shift (S(t)k)(z) = k(t + z).
class ExpPolyKernel {
public:
    struct Term {
        cplx c;
        unsigned m = 0;
        cplx a;
    };

    ExpPolyKernel() = default;
    explicit ExpPolyKernel(std::vector<Term> terms);

    static ExpPolyKernel single(cplx c, unsigned m, cplx a);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    cplx evaluate(cplx z) const;

private:
    std::vector<Term> terms_;
};

/// Exact binomial re-expansion of k(t + z).
ExpPolyKernel shift_apply(const ExpPolyKernel& k, double t);

/// Area q-norm over the sector by tensor Gauss-Legendre quadrature; the
/// sigma range is truncated where the slowest term has decayed below 1e-14.
/// Doubling the rule must move the value by < 0.5% or the call fails.
double bergman_norm(const ExpPolyKernel& k, const SectorProfile& profile,
                    std::size_t quad_points);

/// z^m by repeated multiplication (complex std::pow mishandles 0^0).
cplx monomial(cplx z, unsigned m);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(std::size_t n, rvec& nodes, rvec& weights);

} // namespace semilab::volterra
