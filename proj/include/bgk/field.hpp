#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bgk/error.hpp"
#include "bgk/grid.hpp"

namespace bgk {

/// Cell-centred samples f_ij on a phase-space grid, stored with the velocity
/// index fastest: value (i, j) lives at i * n_v + j.
class DistributionField {
 public:
  DistributionField() = default;

  explicit DistributionField(GridPtr grid, double fill = 0.0)
      : grid_(std::move(grid)), values_(grid_->n_x * grid_->n_v, fill) {}

  DistributionField(GridPtr grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->n_x * grid_->n_v)
      throw GridMismatch("field has " + std::to_string(values_.size()) + " values, grid needs " +
                         std::to_string(grid_->n_x * grid_->n_v));
  }

  const PhaseSpaceGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t n_x() const { return grid_->n_x; }
  std::size_t n_v() const { return grid_->n_v; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * grid_->n_v + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_->n_v + j]; }

  /// All velocities at spatial cell i.
  std::span<double> column(std::size_t i) { return {values_.data() + i * grid_->n_v, grid_->n_v}; }
  std::span<const double> column(std::size_t i) const {
    return {values_.data() + i * grid_->n_v, grid_->n_v};
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
  }

  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }

  bool same_grid(const DistributionField& other) const { return same_grid(*other.grid_); }
  bool same_grid(const PhaseSpaceGrid& g) const { return grid_.get() == &g || *grid_ == g; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

inline double max_abs_difference(const DistributionField& a, const DistributionField& b) {
  if (!a.same_grid(b)) throw GridMismatch("max_abs_difference: fields on different grids");
  double m = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) m = std::max(m, std::abs(av[k] - bv[k]));
  return m;
}

}  // namespace bgk
