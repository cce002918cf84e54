#pragma once

#include <cmath>

#include "bgk/config.hpp"
#include "bgk/field.hpp"
#include "bgk/moments.hpp"

namespace bgk {

/// Fluid state the initial condition prescribes at position x. The inner
/// region is open: |x| == inner_halfwidth takes the outer state.
inline FluidState initial_state(const InitialCondition& ic, double x) {
  return std::abs(x) < ic.inner_halfwidth ? ic.inner : ic.outer;
}

/// Samples the piecewise Maxwellian pointwise at every cell centre.
inline DistributionField sample_initial_condition(const GridPtr& grid, const InitialCondition& ic) {
  validate(ic);
  const auto& g = *grid;
  DistributionField f(grid);
  for (std::size_t i = 0; i < g.n_x; ++i) {
    const FluidState s = initial_state(ic, g.x_centers[i]);
    for (std::size_t j = 0; j < g.n_v; ++j) f(i, j) = maxwellian(s, g.v_centers[j]);
  }
  return f;
}

}  // namespace bgk
