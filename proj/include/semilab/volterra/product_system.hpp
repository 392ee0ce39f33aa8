#pragma once

#include "semilab/boundary/generator.hpp"
#include "semilab/boundary/triple.hpp"
#include "semilab/semigroup/grid.hpp"
#include "semilab/volterra/kernel.hpp"

namespace semilab::volterra {

using boundary::BoundaryTriple;
using numeric::ComplexMatrix;
using semigroup::TimeGrid;

/// Monomial-exponential family {z^m exp(-a_j z)} spanned by a kernel: the
/// finite shift-invariant subspace the product-space dynamics live in.
struct KernelBasis {
    std::vector<cplx> exponents;        // distinct a_j
    std::vector<unsigned> max_power;    // highest power per exponent
    std::vector<std::pair<std::size_t, unsigned>> slots;  // (exponent idx, power)

    static KernelBasis spanned_by(const ExpPolyKernel& k);

    std::size_t dim() const { return slots.size(); }
    std::size_t slot_of(std::size_t j, unsigned m) const;

    /// Scalar coefficients of a kernel living in this basis.
    cvec coefficients(const ExpPolyKernel& k) const;
    ExpPolyKernel kernel_from(const cvec& coeff) const;

    /// d/dz on basis coefficients (m z^{m-1} - a z^m per slot).
    ComplexMatrix derivative_block() const;

    /// Row evaluating coefficients at z = 0 (picks the m = 0 slots).
    cvec delta0_row() const;
};

/// Element of the finitely parametrized product space: an X component plus
/// X-valued coefficients over the monomial-exponential basis (slot-major,
/// length basis.dim() * n).
struct ProductState {
    cvec x;
    cvec coeff;
};

/// Block system on X x (basis (x) X): A = diag(A^cl, d/dz), P couples the
/// components through delta_0 and k(.)P.
struct ProductSystem {
    SectorProfile profile;
    KernelBasis basis;
    ExpPolyKernel kernel;
    std::size_t n = 0;              // X dimension
    ComplexMatrix a_block;          // (n + dim n)^2
    ComplexMatrix p_block;
    ComplexMatrix acl;              // copy of the top-left block
    ComplexMatrix p_obs;            // the observation P on X

    ComplexMatrix full_generator() const;  // a_block + p_block
    double kernel_bergman_norm(std::size_t quad_points = 48) const;

    /// Bergman norm of an X-valued element stored as basis coefficients
    /// (slot-major: coeff[slot * n + i]).
    double state_bergman_norm(const cvec& coeff, std::size_t quad_points = 48) const;

    /// Validates the coefficient length (dim * n) and finiteness.
    void check_state(const ProductState& z) const;

    /// Product norm ||x|| + ||f||_B.
    double state_norm(const ProductState& z) const;
};

/// Seeded Gaussian product state, normalized to unit product norm.
ProductState random_product_state(const ProductSystem& system, std::uint64_t seed);

/// Assembles the blocks after checking feedback well-posedness of the triple.
ProductSystem assemble_product_system(const BoundaryTriple& triple, const ExpPolyKernel& k,
                                      const SectorProfile& profile);

/// Core assembly from an explicit closed-loop matrix and observation P.
ProductSystem assemble_product_system(const ComplexMatrix& acl, const ComplexMatrix& p_obs,
                                      const ExpPolyKernel& k, const SectorProfile& profile);

/// Sampled best constant of int_0^alpha ||P T(t) z||^p dt over seeded unit
/// product states, plus the k(.)P partial constant (exactly homogeneous in
/// the kernel scale).
struct MiyaderaReport {
    double alpha = 0.0;
    double p = 2.0;
    double vartheta = 0.0;          // best constant of the p-th power inequality
    double constant = 0.0;          // vartheta^{1/p}
    double p_block_constant = 0.0;  // k(.)P contribution alone
    bool small_miyadera = false;    // vartheta < 1
};

MiyaderaReport miyadera_admissibility(const ProductSystem& system, double alpha, double p,
                                      const TimeGrid& grid, std::size_t samples = 200,
                                      std::uint64_t seed = 0);

} // namespace semilab::volterra
