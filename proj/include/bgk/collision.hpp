#pragma once

#include <cmath>
#include <string_view>

#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/parallel.hpp"

namespace bgk {

/// Blend weight of one TR-BDF2 step of length h for df/dt = (M - f) / epsilon
/// with M frozen: f <- theta M + (1 - theta) f.
inline double collision_theta(double h, double epsilon) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("collision_theta: step must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error("collision_theta: epsilon must be positive");
  return h * (h + 12.0 * epsilon) / ((h + 3.0 * epsilon) * (h + 4.0 * epsilon));
}

/// Which closed form to use for the half-step blend weight.
enum class HalfStepTheta {
  /// collision_theta(dt/2, eps) = dt (dt + 24 eps) / ((dt + 6 eps)(dt + 8 eps))
  derived,
  /// dt (dt + 48 eps) / ((dt + 6 eps)(dt + 8 eps)); first-order accurate, kept
  /// only so the splitting-order study can show the difference.
  legacy_48,
};

inline std::string_view describe(HalfStepTheta formula) {
  switch (formula) {
    case HalfStepTheta::derived:
      return "dt*(dt+24*eps)/((dt+6*eps)*(dt+8*eps))";
    case HalfStepTheta::legacy_48:
      return "dt*(dt+48*eps)/((dt+6*eps)*(dt+8*eps))";
  }
  return "?";
}

inline double half_step_theta(double dt, double epsilon,
                              HalfStepTheta formula = HalfStepTheta::derived) {
  if (formula == HalfStepTheta::derived) return collision_theta(0.5 * dt, epsilon);
  if (!(dt > 0.0) || !(epsilon > 0.0)) throw Error("half_step_theta: arguments must be positive");
  return dt * (dt + 48.0 * epsilon) / ((dt + 6.0 * epsilon) * (dt + 8.0 * epsilon));
}

/// f <- theta * target + (1 - theta) * f, in place.
inline void collision_step(DistributionField& f, const DistributionField& target, double theta,
                           unsigned threads = 1) {
  if (!f.same_grid(target)) throw GridMismatch("collision_step: fields on different grids");
  const double keep = 1.0 - theta;
  auto fv = f.values();
  auto tv = target.values();
  parallel_for(f.n_x(), threads, [&](std::size_t i) {
    const std::size_t begin = i * f.n_v();
    for (std::size_t k = begin; k < begin + f.n_v(); ++k) fv[k] = theta * tv[k] + keep * fv[k];
  });
}

}  // namespace bgk
