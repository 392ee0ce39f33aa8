#include "semilab/volterra/product_system.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/semigroup/engine.hpp"

namespace semilab::volterra {

using numeric::cplx;
using numeric::cvec;
using numeric::norm2;

KernelBasis KernelBasis::spanned_by(const ExpPolyKernel& k) {
    KernelBasis basis;
    for (const auto& t : k.terms()) {
        std::size_t j = basis.exponents.size();
        for (std::size_t i = 0; i < basis.exponents.size(); ++i) {
            if (basis.exponents[i] == t.a) {
                j = i;
                break;
            }
        }
        if (j == basis.exponents.size()) {
            basis.exponents.push_back(t.a);
            basis.max_power.push_back(t.m);
        } else {
            basis.max_power[j] = std::max(basis.max_power[j], t.m);
        }
    }
    for (std::size_t j = 0; j < basis.exponents.size(); ++j) {
        for (unsigned m = 0; m <= basis.max_power[j]; ++m) {
            basis.slots.emplace_back(j, m);
        }
    }
    return basis;
}

std::size_t KernelBasis::slot_of(std::size_t j, unsigned m) const {
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].first == j && slots[s].second == m) return s;
    }
    throw DimensionMismatch("KernelBasis: slot not present");
}

cvec KernelBasis::coefficients(const ExpPolyKernel& k) const {
    cvec c(dim(), cplx{0.0, 0.0});
    for (const auto& t : k.terms()) {
        std::size_t j = exponents.size();
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] == t.a) {
                j = i;
                break;
            }
        }
        if (j == exponents.size() || t.m > max_power[j]) {
            throw DimensionMismatch("KernelBasis: kernel not inside the basis span");
        }
        c[slot_of(j, t.m)] += t.c;
    }
    return c;
}

ExpPolyKernel KernelBasis::kernel_from(const cvec& coeff) const {
    if (coeff.size() != dim()) throw DimensionMismatch("kernel_from: size");
    std::vector<ExpPolyKernel::Term> terms;
    for (std::size_t s = 0; s < dim(); ++s) {
        if (coeff[s] == cplx{0.0, 0.0}) continue;
        terms.push_back(ExpPolyKernel::Term{coeff[s], slots[s].second,
                                            exponents[slots[s].first]});
    }
    return ExpPolyKernel(std::move(terms));
}

ComplexMatrix KernelBasis::derivative_block() const {
    ComplexMatrix d(dim(), dim());
    for (std::size_t s = 0; s < dim(); ++s) {
        const auto [j, m] = slots[s];
        d(s, s) = -exponents[j];
        if (m + 1 <= max_power[j]) {
            d(s, slot_of(j, m + 1)) = static_cast<double>(m + 1);
        }
    }
    return d;
}

cvec KernelBasis::delta0_row() const {
    cvec row(dim(), cplx{0.0, 0.0});
    for (std::size_t s = 0; s < dim(); ++s) {
        if (slots[s].second == 0) row[s] = 1.0;
    }
    return row;
}

ComplexMatrix ProductSystem::full_generator() const {
    return numeric::add(a_block, p_block);
}

double ProductSystem::kernel_bergman_norm(std::size_t quad_points) const {
    return kernel.empty() ? 0.0 : bergman_norm(kernel, profile, quad_points);
}

double ProductSystem::state_bergman_norm(const cvec& coeff, std::size_t quad_points) const {
    const std::size_t d = basis.dim();
    if (d == 0) return 0.0;
    if (coeff.size() != d * n) throw DimensionMismatch("state_bergman_norm: size");

    double a_min = 1e300;
    unsigned m_max = 0;
    for (std::size_t j = 0; j < basis.exponents.size(); ++j) {
        a_min = std::min(a_min, basis.exponents[j].real());
        m_max = std::max(m_max, basis.max_power[j]);
    }
    double sigma_max = std::log(1e14) / a_min;
    for (int it = 0; it < 60; ++it) {
        sigma_max = (std::log(1e14) +
                     static_cast<double>(m_max) * std::log(std::max(sigma_max, 1.0))) /
                    a_min;
    }

    rvec xs, ws;
    gauss_legendre(quad_points, xs, ws);
    double acc = 0.0;
    cvec value(n);
    for (std::size_t i = 0; i < quad_points; ++i) {
        const double sigma = 0.5 * sigma_max * (xs[i] + 1.0);
        const double wsig = 0.5 * sigma_max * ws[i];
        const double hh = profile.h(sigma);
        if (hh == 0.0) continue;
        for (std::size_t jj = 0; jj < quad_points; ++jj) {
            const double tau = hh * xs[jj];
            const double wtau = hh * ws[jj];
            const cplx z{sigma, tau};
            std::fill(value.begin(), value.end(), cplx{0.0, 0.0});
            for (std::size_t s = 0; s < d; ++s) {
                const auto [j, m] = basis.slots[s];
                const cplx phi = monomial(z, m) * std::exp(-basis.exponents[j] * z);
                for (std::size_t kk = 0; kk < n; ++kk) value[kk] += coeff[s * n + kk] * phi;
            }
            acc += wsig * wtau * std::pow(norm2(value), profile.q);
        }
    }
    return std::pow(acc, 1.0 / profile.q);
}

ProductSystem assemble_product_system(const ComplexMatrix& acl, const ComplexMatrix& p_obs,
                                      const ExpPolyKernel& k, const SectorProfile& profile) {
    if (acl.rows() != acl.cols() || p_obs.rows() != acl.rows() || p_obs.cols() != acl.cols()) {
        throw DimensionMismatch("assemble_product_system: block shapes");
    }
    ProductSystem sys{profile, KernelBasis::spanned_by(k), k, acl.rows(),
                      ComplexMatrix{}, ComplexMatrix{}, acl, p_obs};
    const std::size_t n = sys.n;
    const std::size_t d = sys.basis.dim();
    const std::size_t total = n + d * n;

    sys.a_block = ComplexMatrix(total, total);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sys.a_block(i, j) = acl(i, j);
    }
    const ComplexMatrix dz = sys.basis.derivative_block();
    for (std::size_t s1 = 0; s1 < d; ++s1) {
        for (std::size_t s2 = 0; s2 < d; ++s2) {
            if (dz(s1, s2) == cplx{0.0, 0.0}) continue;
            for (std::size_t i = 0; i < n; ++i) {
                sys.a_block(n + s1 * n + i, n + s2 * n + i) = dz(s1, s2);
            }
        }
    }

    sys.p_block = ComplexMatrix(total, total);
    const cvec delta0 = sys.basis.delta0_row();
    for (std::size_t s = 0; s < d; ++s) {
        if (delta0[s] == cplx{0.0, 0.0}) continue;
        for (std::size_t i = 0; i < n; ++i) {
            sys.p_block(i, n + s * n + i) = delta0[s];
        }
    }
    if (!k.empty()) {
        const cvec kc = sys.basis.coefficients(k);
        for (std::size_t s = 0; s < d; ++s) {
            if (kc[s] == cplx{0.0, 0.0}) continue;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (p_obs(i, j) == cplx{0.0, 0.0}) continue;
                    sys.p_block(n + s * n + i, j) = kc[s] * p_obs(i, j);
                }
            }
        }
    }
    return sys;
}

ProductSystem assemble_product_system(const BoundaryTriple& triple, const ExpPolyKernel& k,
                                      const SectorProfile& profile) {
    const auto fb = semigroup::feedback_wellposed_check(triple, TimeGrid(1.0, 128));
    if (!fb.uniformly_bounded) {
        throw FeedbackSingular("assemble_product_system: boundary feedback not well-posed");
    }
    const boundary::Generator closed = boundary::perturbed_generator(triple);
    // express P in the same Hermitian coordinates as the closed-loop block
    ComplexMatrix p_obs = triple.P;
    for (std::size_t i = 0; i < p_obs.rows(); ++i) {
        for (std::size_t j = 0; j < p_obs.cols(); ++j) {
            p_obs(i, j) *= closed.scale[i] / closed.scale[j];
        }
    }
    return assemble_product_system(closed.matrix, p_obs, k, profile);
}

MiyaderaReport miyadera_admissibility(const ProductSystem& system, double alpha, double p,
                                      const TimeGrid& grid, std::size_t samples,
                                      std::uint64_t seed) {
    if (!(p > 1.0)) throw BadExponent("miyadera_admissibility: need p > 1");
    if (std::abs(alpha - grid.t_max) > 1e-12 * std::max(1.0, alpha)) {
        throw GridMismatch("miyadera_admissibility: alpha must equal grid.t_max");
    }
    const std::size_t n = system.n;
    const std::size_t d = system.basis.dim();

    MiyaderaReport rep;
    rep.alpha = alpha;
    rep.p = p;
    if (numeric::max_abs(system.p_block) == 0.0) return rep;

    const double knorm = system.kernel_bergman_norm();
    const ComplexMatrix e_cl = numeric::matrix_exponential(system.acl, grid.dt());
    const ComplexMatrix e_dz = d > 0
        ? numeric::matrix_exponential(system.basis.derivative_block(), grid.dt())
        : ComplexMatrix{};
    const cvec delta0 = system.basis.delta0_row();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t sample = 0; sample < samples; ++sample) {
        cvec x(n);
        for (auto& z : x) z = cplx{g(rng), g(rng)};
        cvec coeff(d * n);
        for (auto& z : coeff) z = cplx{g(rng), g(rng)};
        const double total_norm = norm2(x) + system.state_bergman_norm(coeff);
        for (auto& z : x) z /= total_norm;
        for (auto& z : coeff) z /= total_norm;

        double acc = 0.0, acc_pblock = 0.0;
        cvec xt = x;
        cvec ct = coeff;
        for (std::size_t i = 0; i <= grid.steps; ++i) {
            // delta_0 S(t) f
            cvec eval0(n, cplx{0.0, 0.0});
            for (std::size_t s = 0; s < d; ++s) {
                if (delta0[s] == cplx{0.0, 0.0}) continue;
                for (std::size_t kk = 0; kk < n; ++kk) eval0[kk] += delta0[s] * ct[s * n + kk];
            }
            // k(.) P T^cl(t) x has Bergman norm ||k|| ||P x_t||
            const cvec px = numeric::apply(system.p_obs, xt);
            const double integrand = norm2(eval0) + knorm * norm2(px);
            const double w = grid.weight(i);
            acc += w * std::pow(integrand, p);
            acc_pblock += w * std::pow(knorm * norm2(px), p);
            if (i < grid.steps) {
                xt = numeric::apply(e_cl, xt);
                if (d > 0) {
                    cvec next(d * n, cplx{0.0, 0.0});
                    for (std::size_t s1 = 0; s1 < d; ++s1) {
                        for (std::size_t s2 = 0; s2 < d; ++s2) {
                            const cplx f = e_dz(s1, s2);
                            if (f == cplx{0.0, 0.0}) continue;
                            for (std::size_t kk = 0; kk < n; ++kk) {
                                next[s1 * n + kk] += f * ct[s2 * n + kk];
                            }
                        }
                    }
                    ct = std::move(next);
                }
            }
        }
        rep.vartheta = std::max(rep.vartheta, acc);
        rep.p_block_constant = std::max(rep.p_block_constant, acc_pblock);
    }
    rep.constant = std::pow(rep.vartheta, 1.0 / p);
    rep.p_block_constant = std::pow(rep.p_block_constant, 1.0 / p);
    rep.small_miyadera = rep.vartheta < 1.0;
    return rep;
}

} // namespace semilab::volterra
