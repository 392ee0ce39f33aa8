#pragma once

#include <vector>

#include "semilab/numeric/complex_matrix.hpp"

namespace semilab::semigroup {

using numeric::cplx;
using numeric::cvec;
using numeric::rvec;

struct TimeGrid {
    double t_max = 0.0;
    std::size_t steps = 0;

    TimeGrid(double t_max_, std::size_t steps_) : t_max(t_max_), steps(steps_) {
        if (!(t_max > 0.0)) throw GridMismatch("TimeGrid: t_max must be positive");
        if (steps < 2) throw GridMismatch("TimeGrid: need at least 2 steps");
    }

    double dt() const { return t_max / static_cast<double>(steps); }
    std::size_t samples() const { return steps + 1; }
    double time(std::size_t i) const { return static_cast<double>(i) * dt(); }

    /// Trapezoid weight of node i.
    double weight(std::size_t i) const {
        return (i == 0 || i == steps) ? 0.5 * dt() : dt();
    }
};

/// Sampled signal on a time grid; one value vector per sample instant
/// (single entry for boundary signals, state dimension for trajectories).
struct SignalSamples {
    TimeGrid grid;
    std::vector<cvec> values;

    SignalSamples(TimeGrid g, std::size_t channels)
        : grid(g), values(g.samples(), cvec(channels, cplx{0.0, 0.0})) {}

    std::size_t channels() const { return values.empty() ? 0 : values.front().size(); }
};

/// Constant scalar signal u == v.
SignalSamples constant_signal(const TimeGrid& grid, cplx v);

} // namespace semilab::semigroup
