#pragma once

#include <cmath>
#include <vector>

// Scalar root oracles for the perturbed heat spectrum, independent of the
// matrix eigensolver path.
namespace testsup {

// Root of tan(pi*mu) = mu in (k - 1/2, k + 1/2); the function is increasing
// there with a sign change across the interval.
inline double tan_root(int k) {
    auto f = [](double m) { return std::tan(M_PI * m) - m; };
    double lo = k - 0.5 + 1e-9;
    double hi = k + 0.5 - 1e-9;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(lo) * f(mid) <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Root of tanh(pi*nu) = nu in (0, 1); gives the single positive eigenvalue
// +nu^2 of the boundary-feedback heat generator.
inline double tanh_root() {
    auto f = [](double v) { return std::tanh(M_PI * v) - v; };
    double lo = 1e-6;
    double hi = 1.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(lo) * f(mid) <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Descending perturbed-heat eigenvalue oracle: +nu^2, then -mu_k^2.
inline std::vector<double> perturbed_heat_eigenvalues(int count) {
    std::vector<double> out;
    const double nu = tanh_root();
    out.push_back(nu * nu);
    for (int k = 1; k < count; ++k) {
        const double mu = tan_root(k);
        out.push_back(-mu * mu);
    }
    return out;
}

} // namespace testsup
