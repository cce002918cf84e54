#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/moments.hpp"
#include "bgk/parallel.hpp"

namespace bgk {

/// Quadrature sums A_0..A_4 of the normalised Gaussian weight for one cell.
using QuadratureSums = std::array<double, 5>;

/// Multiplier a1 + a2 mu + a3 (mu^2 - 1) and the determinant it came from.
struct HermiteCoefficients {
  double a1;
  double a2;
  double a3;
  double det;
};

struct CorrectionCoefficients {
  std::vector<double> a1;
  std::vector<double> a2;
  std::vector<double> a3;
  std::vector<QuadratureSums> A;
  std::vector<double> det;

  std::size_t size() const { return a1.size(); }
};

/// |d| at or below this (relative to |A_2|^3) means the 3x3 system is singular.
inline double singularity_threshold(const QuadratureSums& A) {
  return 1e-10 * std::max(1.0, std::abs(A[2] * A[2] * A[2]));
}

/// A_k = dv / sqrt(2 pi T) * sum_j mu_j^k exp(-mu_j^2 / 2), k = 0..4, for
/// mu_j = (v_j - u) / sqrt(T). Summed in ascending j.
inline QuadratureSums quadrature_sums(const FluidState& s, const PhaseSpaceGrid& g) {
  const double sqrt_t = std::sqrt(s.T);
  QuadratureSums sum{};
  for (std::size_t j = 0; j < g.n_v; ++j) {
    const double mu = (g.v_centers[j] - s.u) / sqrt_t;
    const double w = std::exp(-0.5 * mu * mu);
    const double mu2 = mu * mu;
    sum[0] += w;
    sum[1] += mu * w;
    sum[2] += mu2 * w;
    sum[3] += mu2 * mu * w;
    sum[4] += mu2 * mu2 * w;
  }
  const double scale = g.dv / std::sqrt(2.0 * std::numbers::pi * s.T);
  for (auto& a : sum) a *= scale;
  return sum;
}

inline std::vector<QuadratureSums> quadrature_sums(const FluidMoments& m, const PhaseSpaceGrid& g,
                                                   unsigned threads = 1) {
  require_matching(m, g);
  std::vector<QuadratureSums> out(g.n_x);
  parallel_for(g.n_x, threads, [&](std::size_t i) { out[i] = quadrature_sums(m.state(i), g); });
  return out;
}

inline double correction_determinant(const QuadratureSums& A) {
  const auto [A0, A1, A2, A3, A4] = A;
  return A2 * A2 * A2 - 2.0 * A1 * A2 * A3 + A0 * A3 * A3 + A1 * A1 * A4 - A0 * A2 * A4;
}

/**
 * Closed-form solution of
 *
 *   [A0  A1  A2-A0] [a1]   [1]
 *   [A1  A2  A3-A1] [a2] = [0]
 *   [A2  A3  A4-A2] [a3]   [1]
 *
 * which makes the modified Maxwellian reproduce the discrete mass, momentum
 * and energy of the field it was built from. `cell` is only used to label a
 * SingularCorrection.
 */
inline HermiteCoefficients solve_correction(const QuadratureSums& A, std::size_t cell = 0) {
  const auto [A0, A1, A2, A3, A4] = A;
  const double d = correction_determinant(A);
  if (!(std::abs(d) > singularity_threshold(A))) {
    std::ostringstream os;
    os << "det = " << d << ", A = (" << A0 << ", " << A1 << ", " << A2 << ", " << A3 << ", " << A4
       << ")";
    throw SingularCorrection(cell, os.str());
  }
  return {
      (A1 * A1 + A2 * (2.0 * A2 - A0 - A4) - A3 * (2.0 * A1 - A3)) / d,
      (A1 * (A4 - A2) + A3 * (A0 - A2)) / d,
      (A1 * (A1 - A3) + A2 * (A2 - A0)) / d,
      d,
  };
}

inline CorrectionCoefficients compute_correction(const FluidMoments& m, const PhaseSpaceGrid& g,
                                                 unsigned threads = 1) {
  require_matching(m, g);
  const std::size_t nx = g.n_x;
  CorrectionCoefficients c{std::vector<double>(nx), std::vector<double>(nx),
                           std::vector<double>(nx), std::vector<QuadratureSums>(nx),
                           std::vector<double>(nx)};
  parallel_for(nx, threads, [&](std::size_t i) {
    c.A[i] = quadrature_sums(m.state(i), g);
    const auto h = solve_correction(c.A[i], i + 1);
    c.a1[i] = h.a1;
    c.a2[i] = h.a2;
    c.a3[i] = h.a3;
    c.det[i] = h.det;
  });
  return c;
}

/// Identity multiplier (a1, a2, a3) = (1, 0, 0); turns M~ back into M.
inline CorrectionCoefficients identity_correction(std::size_t n_x) {
  return {std::vector<double>(n_x, 1.0), std::vector<double>(n_x, 0.0),
          std::vector<double>(n_x, 0.0), std::vector<QuadratureSums>(n_x, {1, 0, 1, 0, 3}),
          std::vector<double>(n_x, -2.0)};
}

/// M~_ij = rho / sqrt(2 pi T) exp(-mu^2/2) (a1 + a2 mu + a3 (mu^2 - 1)).
/// Values may be negative when a3 is.
inline DistributionField eval_modified_maxwellian(const FluidMoments& m,
                                                  const CorrectionCoefficients& c,
                                                  const GridPtr& grid, unsigned threads = 1) {
  const auto& g = *grid;
  require_matching(m, g);
  if (c.size() != g.n_x) throw GridMismatch("correction coefficients do not match the grid");
  DistributionField out(grid);
  parallel_for(g.n_x, threads, [&](std::size_t i) {
    const double sqrt_t = std::sqrt(m.T[i]);
    const double peak = m.rho[i] / std::sqrt(2.0 * std::numbers::pi * m.T[i]);
    auto col = out.column(i);
    for (std::size_t j = 0; j < g.n_v; ++j) {
      const double mu = (g.v_centers[j] - m.u[i]) / sqrt_t;
      col[j] = peak * std::exp(-0.5 * mu * mu) * (c.a1[i] + c.a2[i] * mu + c.a3[i] * (mu * mu - 1.0));
    }
  });
  return out;
}

}  // namespace bgk
