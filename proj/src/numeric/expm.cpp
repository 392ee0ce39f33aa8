#include "semilab/numeric/expm.hpp"

#include <array>
#include <cmath>

#include "semilab/numeric/kernels.hpp"
#include "semilab/numeric/solve.hpp"

namespace semilab::numeric {

namespace {

// Degree-13 Pade coefficients and the matching 1-norm threshold.
constexpr std::array<double, 14> kB = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

} // namespace

ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t) {
    if (a.rows() != a.cols()) throw DimensionMismatch("matrix_exponential: not square");
    if (!std::isfinite(t)) throw NonFiniteEntry("matrix_exponential: t not finite");
    const std::size_t n = a.rows();
    if (n == 0) return a;
    if (t == 0.0) return ComplexMatrix::identity(n);

    ComplexMatrix m = scale(a, t);
    const double nrm = one_norm(m);
    int s = 0;
    if (nrm > kTheta13) {
        s = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    }
    if (s > 0) m = scale(m, std::ldexp(1.0, -s));

    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix m2 = multiply(m, m);
    const ComplexMatrix m4 = multiply(m2, m2);
    const ComplexMatrix m6 = multiply(m2, m4);

    // U = M (M6 (b13 M6 + b11 M4 + b9 M2) + b7 M6 + b5 M4 + b3 M2 + b1 I)
    ComplexMatrix w1 = add(scale(m6, kB[13]), add(scale(m4, kB[11]), scale(m2, kB[9])));
    ComplexMatrix w = add(multiply(m6, w1),
                          add(scale(m6, kB[7]),
                              add(scale(m4, kB[5]),
                                  add(scale(m2, kB[3]), scale(ident, kB[1])))));
    ComplexMatrix u = multiply(m, w);

    // V = M6 (b12 M6 + b10 M4 + b8 M2) + b6 M6 + b4 M4 + b2 M2 + b0 I
    ComplexMatrix z1 = add(scale(m6, kB[12]), add(scale(m4, kB[10]), scale(m2, kB[8])));
    ComplexMatrix v = add(multiply(m6, z1),
                          add(scale(m6, kB[6]),
                              add(scale(m4, kB[4]),
                                  add(scale(m2, kB[2]), scale(ident, kB[0])))));

    ComplexMatrix r = solve_linear(subtract(v, u), add(v, u));
    for (int i = 0; i < s; ++i) r = multiply(r, r);
    return r;
}

} // namespace semilab::numeric
