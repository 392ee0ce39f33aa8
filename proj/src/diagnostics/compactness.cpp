#include "semilab/diagnostics/compactness.hpp"

#include <cmath>

#include "semilab/boundary/dirichlet.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"
#include "semilab/numeric/svd.hpp"

namespace semilab::diagnostics {

using numeric::ComplexMatrix;
using numeric::cplx;
using numeric::matrix_exponential;
using numeric::singular_values;
using numeric::subtract;

CompactnessProfile compactness_profile(const Generator& gen, double t) {
    if (!(t > 0.0)) throw NegativeTime("compactness_profile: need t > 0");
    CompactnessProfile prof;
    prof.t = t;
    prof.sv = singular_values(matrix_exponential(gen.matrix, t));
    for (std::size_t k = 0; k + 1 < prof.sv.size(); ++k) {
        prof.decay_ratio.push_back(prof.sv[k] > 0.0 ? prof.sv[k + 1] / prof.sv[k] : 0.0);
    }
    return prof;
}

PerturbationDifferenceReport perturbation_difference_report(const BoundaryTriple& triple,
                                                            double t, cplx lambda,
                                                            const rvec& h_list) {
    if (!(t > 0.0)) throw NegativeTime("perturbation_difference_report: need t > 0");
    PerturbationDifferenceReport rep;
    rep.t = t;
    rep.h_list = h_list;

    const Generator open = boundary::restrict_generator(triple);
    const Generator closed = boundary::perturbed_generator(triple);
    const ComplexMatrix a_node = open.node_matrix();
    const ComplexMatrix acl_node = closed.node_matrix();

    auto difference_at = [&](double s) {
        return subtract(matrix_exponential(acl_node, s), matrix_exponential(a_node, s));
    };

    const ComplexMatrix r_t = difference_at(t);
    rep.semigroup_diff_sv = singular_values(r_t);

    for (double h : h_list) {
        rep.modulus.push_back(numeric::operator_norm(subtract(difference_at(t + h), r_t)));
    }

    // resolvent difference through the feedback assembly vs plain inversion
    const std::size_t n = triple.n;
    ComplexMatrix shifted(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            shifted(i, j) = (i == j ? lambda : cplx{0.0, 0.0}) - a_node(i, j);
        }
    }
    const ComplexMatrix r_open = numeric::solve_linear(shifted, ComplexMatrix::identity(n));
    const ComplexMatrix r_cl = boundary::perturbed_resolvent_node(triple, lambda);
    rep.resolvent_diff_sv = singular_values(subtract(r_cl, r_open));
    const double top = rep.resolvent_diff_sv.empty() ? 0.0 : rep.resolvent_diff_sv.front();
    for (double sv : rep.resolvent_diff_sv) {
        if (sv >= 1e-8 * top && top > 0.0) ++rep.resolvent_diff_rank;
    }
    return rep;
}

} // namespace semilab::diagnostics
