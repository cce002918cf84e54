#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/parallel.hpp"

namespace bgk {

/// nu_j = v_j dt / dx for every velocity row.
inline std::vector<double> courant_numbers(const PhaseSpaceGrid& g, double dt) {
  std::vector<double> nu(g.n_v);
  for (std::size_t j = 0; j < g.n_v; ++j) nu[j] = g.v_centers[j] * dt / g.dx;
  return nu;
}

/**
 * Weights of the third-order upwind-biased Lax-Wendroff update.
 *
 * For nu > 0 they multiply f*_{i-2}, f*_{i-1}, f*_i, f*_{i+1}; for nu < 0
 * they multiply f*_{i-1}, f*_i, f*_{i+1}, f*_{i+2}. Written in factored form
 * so the update is an exact shift at |nu| = 1 and |nu| = 2.
 */
inline std::array<double, 4> transport_weights(double nu) {
  if (nu > 0.0) {
    const double n = nu;
    return {(n - 1.0) * n * (n + 1.0) / 6.0, n * (2.0 - n) * (1.0 + n) / 2.0,
            (1.0 - n) * (2.0 - n) * (1.0 + n) / 2.0, -n * (1.0 - n) * (2.0 - n) / 6.0};
  }
  const double n = -nu;
  return {-n * (1.0 - n) * (2.0 - n) / 6.0, (1.0 - n) * (2.0 - n) * (1.0 + n) / 2.0,
          n * (2.0 - n) * (1.0 + n) / 2.0, (n - 1.0) * n * (n + 1.0) / 6.0};
}

/// One full transport step of f_t + v f_x = 0 with periodic wrap in x.
/// Reads only from `f_star`; `out` must be a different field on the same grid.
inline void transport_step(const DistributionField& f_star, std::span<const double> nu,
                           DistributionField& out, unsigned threads = 1) {
  const auto& g = f_star.grid();
  if (!out.same_grid(f_star)) throw GridMismatch("transport_step: fields on different grids");
  if (nu.size() != g.n_v) throw GridMismatch("transport_step: one Courant number per velocity row");
  if (&out == &f_star) throw Error("transport_step: input and output must be distinct buffers");
  if (g.n_x < kMinSpatialCells) throw ConfigError("transport_step: n_x below stencil width");

  const std::size_t nx = g.n_x;
  const auto wrap = [nx](std::size_t i, std::ptrdiff_t offset) {
    return static_cast<std::size_t>((static_cast<std::ptrdiff_t>(i + nx) + offset) %
                                    static_cast<std::ptrdiff_t>(nx));
  };

  parallel_for(g.n_v, threads, [&](std::size_t j) {
    if (nu[j] == 0.0) {
      for (std::size_t i = 0; i < nx; ++i) out(i, j) = f_star(i, j);
      return;
    }
    const auto w = transport_weights(nu[j]);
    const std::ptrdiff_t first = nu[j] > 0.0 ? -2 : -1;
    for (std::size_t i = 0; i < nx; ++i) {
      out(i, j) = w[0] * f_star(wrap(i, first), j) + w[1] * f_star(wrap(i, first + 1), j) +
                  w[2] * f_star(wrap(i, first + 2), j) + w[3] * f_star(wrap(i, first + 3), j);
    }
  });
}

inline DistributionField transport_step(const DistributionField& f_star, std::span<const double> nu,
                                        unsigned threads = 1) {
  DistributionField out(f_star.grid_ptr());
  transport_step(f_star, nu, out, threads);
  return out;
}

}  // namespace bgk
