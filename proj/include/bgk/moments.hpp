#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include "bgk/config.hpp"
#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/parallel.hpp"

namespace bgk {

/// Per-cell fluid moments of a distribution. The raw moments (rho, mom,
/// energy) are the midpoint sums; u and T are derived from them.
struct FluidMoments {
  std::vector<double> rho;
  std::vector<double> mom;
  std::vector<double> energy;
  std::vector<double> u;
  std::vector<double> T;

  std::size_t size() const { return rho.size(); }
  FluidState state(std::size_t i) const { return {rho[i], u[i], T[i]}; }
};

/// rho / sqrt(2 pi T) * exp(-(v - u)^2 / (2 T))
inline double maxwellian(const FluidState& s, double v) {
  const double mu = (v - s.u) / std::sqrt(s.T);
  return s.rho / std::sqrt(2.0 * std::numbers::pi * s.T) * std::exp(-0.5 * mu * mu);
}

/**
 * Midpoint-rule velocity moments of f, one spatial cell at a time.
 *
 * Sums run in ascending velocity index so results are bitwise reproducible.
 * Throws NonPositiveDensity / NonPositiveTemperature (1-based cell index) if
 * the field does not describe a physical state.
 */
inline FluidMoments compute_moments(const DistributionField& f, unsigned threads = 1) {
  const auto& g = f.grid();
  const std::size_t nx = g.n_x;
  FluidMoments m{std::vector<double>(nx), std::vector<double>(nx), std::vector<double>(nx),
                 std::vector<double>(nx), std::vector<double>(nx)};
  parallel_for(nx, threads, [&](std::size_t i) {
    const auto col = f.column(i);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < g.n_v; ++j) {
      const double v = g.v_centers[j];
      s0 += col[j];
      s1 += v * col[j];
      s2 += v * v * col[j];
    }
    const double rho = g.dv * s0;
    const double mom = g.dv * s1;
    const double energy = g.dv * s2;
    if (!(rho > 0.0) || !std::isfinite(rho)) {
      std::ostringstream os;
      os << "rho = " << rho;
      throw NonPositiveDensity(i + 1, os.str());
    }
    const double u = mom / rho;
    const double T = energy / rho - u * u;
    if (!(T > 0.0) || !std::isfinite(T)) {
      std::ostringstream os;
      os << "T = " << T << ", rho = " << rho;
      throw NonPositiveTemperature(i + 1, os.str());
    }
    m.rho[i] = rho;
    m.mom[i] = mom;
    m.energy[i] = energy;
    m.u[i] = u;
    m.T[i] = T;
  });
  return m;
}

inline void require_matching(const FluidMoments& m, const PhaseSpaceGrid& g) {
  if (m.size() != g.n_x)
    throw GridMismatch("moments have " + std::to_string(m.size()) + " cells, grid has " +
                       std::to_string(g.n_x));
}

/// Uncorrected Maxwellian M_ij built from the given moments.
inline DistributionField eval_maxwellian(const FluidMoments& m, const GridPtr& grid,
                                         unsigned threads = 1) {
  const auto& g = *grid;
  require_matching(m, g);
  DistributionField out(grid);
  parallel_for(g.n_x, threads, [&](std::size_t i) {
    const double sqrt_t = std::sqrt(m.T[i]);
    const double peak = m.rho[i] / std::sqrt(2.0 * std::numbers::pi * m.T[i]);
    auto col = out.column(i);
    for (std::size_t j = 0; j < g.n_v; ++j) {
      const double mu = (g.v_centers[j] - m.u[i]) / sqrt_t;
      col[j] = peak * std::exp(-0.5 * mu * mu);
    }
  });
  return out;
}

}  // namespace bgk
