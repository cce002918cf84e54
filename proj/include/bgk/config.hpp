#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "bgk/error.hpp"
#include "bgk/grid.hpp"

namespace bgk {

/// Primitive fluid state (density, velocity, temperature).
struct FluidState {
  double rho;
  double u;
  double T;

  friend bool operator==(const FluidState&, const FluidState&) = default;
};

enum class InitialConditionKind { piecewise_maxwellian };

/// Maxwellian with `inner` state where |x| < inner_halfwidth, `outer` elsewhere.
struct InitialCondition {
  InitialConditionKind kind = InitialConditionKind::piecewise_maxwellian;
  double inner_halfwidth = 0.5;
  FluidState inner{1.000, 0.250, 1.000};
  FluidState outer{0.125, -0.10, 0.800};

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

inline constexpr double kMaxCfl = 2.0;
inline constexpr double kCflWarnAbove = 1.999;

struct RunConfig {
  double epsilon = 0.01;
  double cfl = 1.95;
  double final_time = 0.16;
  InitialCondition ic{};
  bool correction_enabled = true;
  std::size_t output_every = 0;  ///< snapshot cadence in steps; 0 = endpoints only

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Everything a run needs: mesh, physics/run parameters, output location.
struct SolverConfig {
  GridSpec grid{};
  RunConfig run{};
  std::string output_dir = "output";

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

namespace detail {

inline void require_state(const FluidState& s, const char* name) {
  if (!(s.rho > 0.0) || !std::isfinite(s.rho))
    throw ConfigError(std::string(name) + " density must be positive and finite");
  if (!(s.T > 0.0) || !std::isfinite(s.T))
    throw ConfigError(std::string(name) + " temperature must be positive and finite");
  if (!std::isfinite(s.u)) throw ConfigError(std::string(name) + " velocity must be finite");
}

}  // namespace detail

inline void validate(const InitialCondition& ic) {
  if (!(ic.inner_halfwidth > 0.0) || !std::isfinite(ic.inner_halfwidth))
    throw ConfigError("inner_halfwidth must be positive");
  detail::require_state(ic.inner, "inner");
  detail::require_state(ic.outer, "outer");
}

inline void validate(const RunConfig& c) {
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon))
    throw ConfigError("epsilon must be strictly positive");
  if (!(c.cfl > 0.0) || !(c.cfl <= kMaxCfl))
    throw ConfigError("cfl must lie in (0, 2]");
  if (!(c.final_time > 0.0) || !std::isfinite(c.final_time))
    throw ConfigError("final_time must be strictly positive");
  validate(c.ic);
}

inline void validate(const SolverConfig& c) {
  (void)build_grid(c.grid);
  validate(c.run);
}

}  // namespace bgk
