#include "semilab/semigroup/grid.hpp"

namespace semilab::semigroup {

SignalSamples constant_signal(const TimeGrid& grid, cplx v) {
    SignalSamples s(grid, 1);
    for (auto& val : s.values) val[0] = v;
    return s;
}

} // namespace semilab::semigroup
