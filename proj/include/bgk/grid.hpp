#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <vector>

#include "bgk/error.hpp"

namespace bgk {

/// Smallest n_x for which the 4-point transport stencils plus the periodic
/// wrap never read the same cell twice.
inline constexpr std::size_t kMinSpatialCells = 5;
inline constexpr std::size_t kMinVelocityCells = 3;

/// Extents and resolution of the truncated (x, v) box.
struct GridSpec {
  double x_low = -1.25;
  double x_high = 1.25;
  double v_low = -7.0;
  double v_high = 7.0;
  std::size_t n_x = 256;
  std::size_t n_v = 128;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/**
 * Uniform cell-centred phase-space mesh.
 *
 * Cells are numbered 1..n_x and 1..n_v in file formats and diagnostics; the
 * arrays here are 0-based, so x_centers[k] is the centre of cell k + 1.
 */
struct PhaseSpaceGrid {
  double x_low;
  double x_high;
  double v_low;
  double v_high;
  std::size_t n_x;
  std::size_t n_v;
  double dx;
  double dv;
  std::vector<double> x_centers;
  std::vector<double> v_centers;
  double v_max_abs;

  GridSpec spec() const { return {x_low, x_high, v_low, v_high, n_x, n_v}; }
  double length() const { return x_high - x_low; }

  friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;
};

using GridPtr = std::shared_ptr<const PhaseSpaceGrid>;

inline PhaseSpaceGrid build_grid(double x_low, double x_high, double v_low, double v_high,
                                 std::size_t n_x, std::size_t n_v) {
  if (!std::isfinite(x_low) || !std::isfinite(x_high) || !(x_high > x_low)) {
    std::ostringstream os;
    os << "domain order: x_high (" << x_high << ") must exceed x_low (" << x_low << ")";
    throw ConfigError(os.str());
  }
  if (!std::isfinite(v_low) || !std::isfinite(v_high) || !(v_high > v_low)) {
    std::ostringstream os;
    os << "domain order: v_high (" << v_high << ") must exceed v_low (" << v_low << ")";
    throw ConfigError(os.str());
  }
  if (n_x < kMinSpatialCells)
    throw ConfigError("stencil too small: n_x = " + std::to_string(n_x) +
                      " but the transport stencil needs at least " +
                      std::to_string(kMinSpatialCells) + " cells");
  if (n_v < kMinVelocityCells)
    throw ConfigError("n_v = " + std::to_string(n_v) + " is below the minimum of " +
                      std::to_string(kMinVelocityCells));

  PhaseSpaceGrid g{x_low, x_high, v_low, v_high, n_x, n_v, 0.0, 0.0, {}, {}, 0.0};
  g.dx = (x_high - x_low) / static_cast<double>(n_x);
  g.dv = (v_high - v_low) / static_cast<double>(n_v);
  g.x_centers.resize(n_x);
  for (std::size_t i = 0; i < n_x; ++i)
    g.x_centers[i] = x_low + (static_cast<double>(i + 1) - 0.5) * g.dx;
  g.v_centers.resize(n_v);
  for (std::size_t j = 0; j < n_v; ++j)
    g.v_centers[j] = v_low + (static_cast<double>(j + 1) - 0.5) * g.dv;
  g.v_max_abs = std::max(std::abs(v_low), std::abs(v_high));
  return g;
}

inline PhaseSpaceGrid build_grid(const GridSpec& s) {
  return build_grid(s.x_low, s.x_high, s.v_low, s.v_high, s.n_x, s.n_v);
}

inline GridPtr make_grid(const GridSpec& s) {
  return std::make_shared<const PhaseSpaceGrid>(build_grid(s));
}

}  // namespace bgk
