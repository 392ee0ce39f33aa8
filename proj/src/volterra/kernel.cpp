#include "semilab/volterra/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace semilab::volterra {

SectorProfile::SectorProfile(double a_, double beta_, double s_, double p_)
    : a(a_), beta(beta_), s(s_), p(p_) {
    if (!(a > 0.0)) throw BadExponent("SectorProfile: need a > 0");
    if (!(beta >= 1.0)) throw BadExponent("SectorProfile: need beta >= 1");
    if (!(s > 1.0)) throw BadExponent("SectorProfile: need s > 1");
    if (!(p > 1.0)) throw BadExponent("SectorProfile: need p > 1");
    if (!(beta * (s - 1.0) < 1.0)) {
        throw BadExponent("SectorProfile: integral of h^{1-s} diverges (beta (s-1) >= 1)");
    }
    q = p * s / (s - 1.0);
}

double SectorProfile::h(double sigma) const { return a * std::pow(sigma, beta); }

namespace {

struct TermKey {
    unsigned m;
    double are, aim;
    bool operator<(const TermKey& o) const {
        if (m != o.m) return m < o.m;
        if (are != o.are) return are < o.are;
        return aim < o.aim;
    }
};

std::vector<ExpPolyKernel::Term> merge_terms(std::vector<ExpPolyKernel::Term> in) {
    std::map<TermKey, cplx> acc;
    for (const auto& t : in) {
        acc[TermKey{t.m, t.a.real(), t.a.imag()}] += t.c;
    }
    std::vector<ExpPolyKernel::Term> out;
    for (const auto& [key, c] : acc) {
        if (c == cplx{0.0, 0.0}) continue;
        out.push_back(ExpPolyKernel::Term{c, key.m, cplx{key.are, key.aim}});
    }
    return out;
}

} // namespace

ExpPolyKernel::ExpPolyKernel(std::vector<Term> terms) : terms_(merge_terms(std::move(terms))) {
    for (const auto& t : terms_) {
        if (!(t.a.real() > 0.0)) {
            throw std::invalid_argument("ExpPolyKernel: need Re a > 0 for every term");
        }
        if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()) ||
            !std::isfinite(t.a.real()) || !std::isfinite(t.a.imag())) {
            throw NonFiniteEntry("ExpPolyKernel: non-finite term");
        }
    }
}

ExpPolyKernel ExpPolyKernel::single(cplx c, unsigned m, cplx a) {
    return ExpPolyKernel(std::vector<Term>{Term{c, m, a}});
}

cplx monomial(cplx z, unsigned m) {
    cplx acc{1.0, 0.0};
    for (unsigned i = 0; i < m; ++i) acc *= z;
    return acc;
}

cplx ExpPolyKernel::evaluate(cplx z) const {
    cplx acc{0.0, 0.0};
    for (const auto& t : terms_) {
        acc += t.c * monomial(z, t.m) * std::exp(-t.a * z);
    }
    return acc;
}

ExpPolyKernel shift_apply(const ExpPolyKernel& k, double t) {
    if (t < 0.0) throw NegativeTime("shift_apply: t must be nonnegative");
    if (t == 0.0) return k;
    std::vector<ExpPolyKernel::Term> out;
    for (const auto& term : k.terms()) {
        const cplx decay = term.c * std::exp(-term.a * t);
        // (z + t)^m = sum_i C(m, i) t^{m-i} z^i
        double binom = 1.0;
        rvec coeff(term.m + 1);
        for (unsigned i = 0; i <= term.m; ++i) {
            // C(m, i) computed incrementally
            if (i > 0) binom = binom * static_cast<double>(term.m - i + 1) / static_cast<double>(i);
            coeff[i] = binom * std::pow(t, static_cast<double>(term.m - i));
        }
        for (unsigned i = 0; i <= term.m; ++i) {
            out.push_back(ExpPolyKernel::Term{decay * coeff[i], i, term.a});
        }
    }
    return ExpPolyKernel(std::move(out));
}

void gauss_legendre(std::size_t n, rvec& nodes, rvec& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(j) + 1.0) * x * p1 -
                      static_cast<double>(j) * p2) /
                     (static_cast<double>(j) + 1.0);
            }
            pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

namespace {

double sector_integral(const ExpPolyKernel& k, const SectorProfile& profile,
                       double sigma_max, std::size_t npts) {
    rvec xs, ws;
    gauss_legendre(npts, xs, ws);
    double acc = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        const double sigma = 0.5 * sigma_max * (xs[i] + 1.0);
        const double wsig = 0.5 * sigma_max * ws[i];
        const double hh = profile.h(sigma);
        if (hh == 0.0) continue;
        double inner = 0.0;
        for (std::size_t j = 0; j < npts; ++j) {
            const double tau = hh * xs[j];
            const double wtau = hh * ws[j];
            inner += wtau * std::pow(std::abs(k.evaluate(cplx{sigma, tau})), profile.q);
        }
        acc += wsig * inner;
    }
    return acc;
}

} // namespace

double bergman_norm(const ExpPolyKernel& k, const SectorProfile& profile,
                    std::size_t quad_points) {
    if (quad_points < 32) throw GridTooShort("bergman_norm: need quad_points >= 32");
    if (k.empty()) return 0.0;

    double a_min = 1e300;
    unsigned m_max = 0;
    for (const auto& t : k.terms()) {
        a_min = std::min(a_min, t.a.real());
        m_max = std::max(m_max, t.m);
    }
    // truncate where sigma^{m_max} exp(-a_min sigma) < 1e-14
    double sigma_max = std::log(1e14) / a_min;
    for (int it = 0; it < 60; ++it) {
        sigma_max = (std::log(1e14) +
                     static_cast<double>(m_max) * std::log(std::max(sigma_max, 1.0))) /
                    a_min;
    }

    const double coarse = sector_integral(k, profile, sigma_max, quad_points);
    const double fine = sector_integral(k, profile, sigma_max, 2 * quad_points);
    const double nc = std::pow(coarse, 1.0 / profile.q);
    const double nf = std::pow(fine, 1.0 / profile.q);
    if (nf > 0.0 && std::abs(nf - nc) > 5e-3 * nf) {
        throw QuadratureNotConverged("bergman_norm: rule doubling moved the value > 0.5%");
    }
    return nf;
}

} // namespace semilab::volterra
