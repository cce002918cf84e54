#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "bgk/collision.hpp"
#include "bgk/config.hpp"
#include "bgk/correction.hpp"
#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/initial_condition.hpp"
#include "bgk/moments.hpp"
#include "bgk/transport.hpp"

namespace bgk {

struct TimeStepping {
  double dt;
  std::size_t n_steps;
  double cfl_effective;
  double theta_half;
  HalfStepTheta theta_formula = HalfStepTheta::derived;
};

/// Provisional dt from the CFL number, rounded up to a whole number of steps
/// that land exactly on final_time, then the CFL number actually achieved.
inline TimeStepping plan_timestepping(const PhaseSpaceGrid& g, const RunConfig& c,
                                      HalfStepTheta formula = HalfStepTheta::derived) {
  validate(c);
  const double provisional = g.dx * c.cfl / g.v_max_abs;
  const auto n_steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(c.final_time / provisional)));
  const double dt = c.final_time / static_cast<double>(n_steps);
  return {dt, n_steps, g.v_max_abs * dt / g.dx, half_step_theta(dt, c.epsilon, formula), formula};
}

/// Discrete totals sum_ij (1, v_j, v_j^2) f_ij, plus sum_ij |v_j f_ij| as the
/// scale for momentum when the net momentum is (close to) zero.
struct ConservedTotals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double momentum_scale = 0.0;
};

inline ConservedTotals conserved_totals(const DistributionField& f) {
  const auto& g = f.grid();
  ConservedTotals t;
  for (std::size_t i = 0; i < g.n_x; ++i) {
    for (std::size_t j = 0; j < g.n_v; ++j) {
      const double v = g.v_centers[j];
      const double x = f(i, j);
      t.mass += x;
      t.momentum += v * x;
      t.energy += v * v * x;
      t.momentum_scale += std::abs(v * x);
    }
  }
  return t;
}

/// |q - q0| / |q0|, falling back to `scale` when q0 is negligible against it.
inline double relative_change(double q, double q0, double scale) {
  double denom = std::abs(q0);
  if (denom <= 1e-8 * scale) denom = scale;
  if (denom == 0.0) return q == q0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(q - q0) / denom;
}

struct ConservationRecord {
  std::size_t step;
  double time;
  double drho;
  double dm;
  double dE;
  double min_f;
  double min_mtilde;
};

struct ConservationSeries {
  ConservedTotals initial;
  std::vector<ConservationRecord> records;

  void record(std::size_t step, double time, const DistributionField& f, double min_mtilde) {
    const auto now = conserved_totals(f);
    if (records.empty()) initial = now;
    records.push_back({step, time, relative_change(now.mass, initial.mass, initial.mass),
                       relative_change(now.momentum, initial.momentum, initial.momentum_scale),
                       relative_change(now.energy, initial.energy, initial.energy), f.min_value(),
                       min_mtilde});
  }
};

/// Target of a collision half-step: M~ from the current moments, or plain M
/// when the correction is off.
inline DistributionField collision_target(const DistributionField& f, bool corrected,
                                          unsigned threads = 1) {
  const auto m = compute_moments(f, threads);
  if (!corrected) return eval_maxwellian(m, f.grid_ptr(), threads);
  const auto c = compute_correction(m, f.grid(), threads);
  return eval_modified_maxwellian(m, c, f.grid_ptr(), threads);
}

/**
 * One Strang step: half collision, full transport, half collision.
 *
 * The collision target is rebuilt from the current moments before each half
 * step. `scratch` holds the pre-transport copy f*. Returns the smallest value
 * of either collision target.
 */
inline double strang_step(DistributionField& f, DistributionField& scratch,
                          std::span<const double> nu, const TimeStepping& ts, bool corrected,
                          unsigned threads = 1) {
  auto target = collision_target(f, corrected, threads);
  double min_target = target.min_value();
  collision_step(f, target, ts.theta_half, threads);

  std::swap(f, scratch);
  transport_step(scratch, nu, f, threads);

  target = collision_target(f, corrected, threads);
  min_target = std::min(min_target, target.min_value());
  collision_step(f, target, ts.theta_half, threads);
  return min_target;
}

struct StepperOptions {
  unsigned threads = 1;
  HalfStepTheta theta_formula = HalfStepTheta::derived;
};

/// Owns the distribution and its buffers and advances it step by step.
class Solver {
 public:
  Solver(DistributionField initial, RunConfig config, StepperOptions options = {})
      : config_(std::move(config)),
        options_(options),
        f_(std::move(initial)),
        scratch_(f_.grid_ptr()),
        timestepping_(plan_timestepping(f_.grid(), config_, options.theta_formula)),
        nu_(courant_numbers(f_.grid(), timestepping_.dt)) {
    if (!f_.all_finite()) throw Error("initial distribution has non-finite values");
    series_.record(0, 0.0, f_, initial_target_minimum());
  }

  const TimeStepping& timestepping() const { return timestepping_; }
  const RunConfig& config() const { return config_; }
  const DistributionField& field() const { return f_; }
  const ConservationSeries& conservation() const { return series_; }
  std::size_t steps_taken() const { return step_; }
  bool finished() const { return step_ >= timestepping_.n_steps; }

  /// Time after the current step; the last step lands exactly on final_time.
  double time() const {
    return step_ == timestepping_.n_steps ? config_.final_time
                                          : static_cast<double>(step_) * timestepping_.dt;
  }

  void step() {
    const std::size_t n = step_ + 1;
    double min_target = 0.0;
    try {
      min_target = strang_step(f_, scratch_, nu_, timestepping_, config_.correction_enabled,
                               options_.threads);
    } catch (NumericalError& e) {
      e.set_step(n);
      throw;
    }
    step_ = n;
    series_.record(step_, time(), f_, min_target);
  }

  void run_to_end() {
    while (!finished()) step();
  }

 private:
  double initial_target_minimum() const {
    try {
      return collision_target(f_, config_.correction_enabled, options_.threads).min_value();
    } catch (NumericalError& e) {
      e.set_step(0);
      throw;
    }
  }

  RunConfig config_;
  StepperOptions options_;
  DistributionField f_;
  DistributionField scratch_;
  TimeStepping timestepping_;
  std::vector<double> nu_;
  ConservationSeries series_;
  std::size_t step_ = 0;
};

struct Snapshot {
  std::size_t step;
  double time;
  DistributionField field;
  FluidMoments moments;
};

struct RunResult {
  DistributionField final_field;
  ConservationSeries conservation;
  TimeStepping timestepping;
  std::vector<Snapshot> snapshots;  ///< empty when an observer consumed them
};

using SnapshotObserver = std::function<void(const Snapshot&)>;

inline bool snapshot_due(std::size_t step, std::size_t n_steps, std::size_t every) {
  return step == 0 || step == n_steps || (every > 0 && step % every == 0);
}

/// Builds the grid and initial data, then steps to final_time. Snapshots go
/// to `observer` if given, otherwise into the result.
inline RunResult run(const SolverConfig& config, const StepperOptions& options = {},
                     const SnapshotObserver& observer = {}) {
  validate(config);
  const auto grid = make_grid(config.grid);
  Solver solver(sample_initial_condition(grid, config.run.ic), config.run, options);

  RunResult result{DistributionField{}, {}, solver.timestepping(), {}};
  const auto emit = [&] {
    const auto n = solver.steps_taken();
    if (!snapshot_due(n, solver.timestepping().n_steps, config.run.output_every)) return;
    Snapshot s{n, solver.time(), solver.field(), compute_moments(solver.field(), options.threads)};
    if (observer)
      observer(s);
    else
      result.snapshots.push_back(std::move(s));
  };

  emit();
  while (!solver.finished()) {
    solver.step();
    emit();
  }
  result.final_field = solver.field();
  result.conservation = solver.conservation();
  return result;
}

}  // namespace bgk
