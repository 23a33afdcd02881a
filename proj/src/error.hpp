#pragma once

#include <stdexcept>

namespace discrimlab {

// Conditional preparation with (numerically) zero probability: the
// conditional state is undefined, so this is an error rather than a silent
// zero.
struct DegenerateConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Observed statistics violate a structural constraint by more than sampling
// noise could explain (e.g. a separation radicand below -1e-10).
struct InconsistentStatisticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace discrimlab
