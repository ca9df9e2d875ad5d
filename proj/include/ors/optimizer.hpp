#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ors/core.hpp"

namespace ors {

/// Mapping of the iteration counter onto a cyclic model day.
struct DayClock
{
  double day_length = 24.0;
  double t1 = 8.0;  // start of the speed-up window
  double t2 = 12.0; // start of the midday slow-down
  double t3 = 16.0; // start of the afternoon/night window
  double hours_per_iteration = 0.5;

  /// Model time of day for a 1-based iteration number.
  double time_of_day(std::size_t iteration) const;
};

enum class CutoffComparison
{
  Strict,   // S_f <  cutoff explores
  Inclusive // S_f <= cutoff explores
};

struct OrsParams
{
  // Sand temperature multipliers.
  double omega1 = 1.10; // speed-up at tolerable temperature
  double omega2 = 1.25; // slow-down divisor under heat stress
  // Time-of-day multipliers.
  double omega3 = 1.20;
  double omega4 = 1.25;
  double omega5 = 1.10;

  // Emergence order. When k1/k2 are unset they default to 0.1 and 0.05 of
  // the mean bound width of the problem (see resolved()).
  double k = 1.0;
  std::optional<double> k1;
  std::optional<double> k2;

  double temp_tol = 37.0;
  double temp_max = 40.0;
  double temp_sample_low = 25.0;
  double temp_sample_high = 42.0;

  DayClock clock;

  double survival_cutoff = 0.3;
  CutoffComparison cutoff_comparison = CutoffComparison::Strict;

  // Speed-retention factor range of the trajectory model.
  double retention_low = 0.8;
  double retention_high = 1.2;

  EmergenceAssignment emergence_assignment = EmergenceAssignment::Tercile;

  std::size_t population_size = 30;
  std::size_t max_iterations = 1000;

  /// Throws std::invalid_argument on any violated parameter invariant.
  void validate() const;

  /// Copy with k1/k2 filled in from the problem's bound widths.
  OrsParams resolved(const SearchSpace& space) const;
};

enum class TemperatureBranch
{
  Tolerable,
  Stressed,
  Lethal
};

enum class DayPhase
{
  Morning, // [t1, t2)
  Midday,  // [t2, t3)
  Night    // [t3, t1) cyclically
};

struct EnvironmentState
{
  double sand_temp = 0.0;
  double day_time = 0.0;
};

TemperatureBranch classify_temperature(double temp, const OrsParams& params);
DayPhase classify_day_time(double day_time, const DayClock& clock);

/// Velocity change caused by sand temperature. std::nullopt is the lethal
/// branch: the hatchling dies and must be replaced.
std::optional<std::vector<double>> temperature_delta(std::span<const double> v, double temp,
                                                     const OrsParams& params);

/// Velocity change caused by emergence order. params must carry k1 and k2
/// (call OrsParams::resolved first).
std::vector<double> emergence_delta(std::span<const double> v, EmergenceOrder order,
                                    const OrsParams& params);

/// Velocity change caused by time of day. day_time must lie in [0, day_length).
std::vector<double> time_of_day_delta(std::span<const double> v, double day_time,
                                      const OrsParams& params);

/// Weighted environmental impact r1 = p1 * (temperature + emergence + time)
/// with the given weight. std::nullopt when the temperature is lethal.
std::optional<std::vector<double>> environmental_delta(const Hatchling& h,
                                                       const EnvironmentState& env,
                                                       const OrsParams& params, double p1);

/// As above with p1 drawn uniformly from [0, 1).
std::optional<std::vector<double>> environmental_delta(const Hatchling& h,
                                                       const EnvironmentState& env,
                                                       const OrsParams& params, RandomSource& rng);

/// Tangential speed change between two planar velocity states.
double planar_speed_change(double vx0, double vy0, double vx1, double vy1);

/// Heading change between two planar velocity states, radians.
double heading_change(double vx0, double vy0, double vx1, double vy1);

struct TrajectoryDelta
{
  std::vector<double> magnitude_delta; // r2, one entry per dimension
  double angle_delta = 0.0;            // diagnostic only
};

/// Movement-trajectory impact with explicit draws: each component's speed
/// |v_j| is split into planar parts at heading theta1, scaled by retention and
/// re-emitted at heading theta2; the speed change is weighted by p2.
TrajectoryDelta trajectory_delta(std::span<const double> v, double theta1, double theta2,
                                 double retention, double p2);

/// As above with theta1, theta2 ~ U[0, pi/2], retention ~ U[retention_low,
/// retention_high] and p2 ~ U[0, 1).
TrajectoryDelta trajectory_delta(const Hatchling& h, const OrsParams& params, RandomSource& rng);

/// (f_max - f_i) / (f_max - f_min) over the finite entries; non-finite
/// entries score 0 and a degenerate population scores 1.
double survival_factor(std::span<const double> objective_values, std::size_t i);
std::vector<double> survival_factors(std::span<const double> objective_values);
void assign_survival_factors(std::span<Hatchling> population);

/// True when a hatchling with this survival factor takes the additive
/// (exploring) branch of the update.
bool explores(double survival_factor, const OrsParams& params);

/// Unclamped update m * ((v -/+ resultant) + v_best).
std::vector<double> survival_update(const Hatchling& h, std::span<const double> best_velocity,
                                    std::span<const double> resultant, const OrsParams& params);

/// survival_update followed by clamping and re-evaluation of the objective.
Hatchling update_hatchling(const Hatchling& h, std::span<const double> best_velocity,
                           std::span<const double> resultant, const OrsParams& params,
                           const ObjectiveSpec& objective, RandomSource& rng);

/// Replacement for a hatchling lost to the lethal temperature branch: new
/// mass and velocity, same emergence slot, objective evaluated.
Hatchling handle_death(const Hatchling& h, const ObjectiveSpec& objective, RandomSource& rng);

/// Branch counters gathered during a run.
struct OrsDiagnostics
{
  std::array<std::size_t, 3> temperature{}; // indexed by TemperatureBranch
  std::array<std::size_t, 3> emergence{};   // indexed by EmergenceOrder
  std::array<std::size_t, 3> day_phase{};   // indexed by DayPhase
  std::size_t deaths = 0;
  std::size_t explore_updates = 0;
  std::size_t exploit_updates = 0;
  std::size_t non_finite_evaluations = 0;
};

struct OrsResult
{
  Hatchling best;
  ConvergenceTrace trace;
  OrsDiagnostics diagnostics;
  std::size_t evaluations = 0;
};

/// Called after every iteration with the 1-based iteration number and the
/// current population.
using PopulationObserver = std::function<void(std::size_t, std::span<const Hatchling>)>;

/// Runs the optimizer for params.max_iterations sweeps over the population.
/// Costs population_size * (max_iterations + 1) objective evaluations.
OrsResult optimize(const ObjectiveSpec& objective, const OrsParams& params, RandomSource& rng,
                   const PopulationObserver& observer = {});

} // namespace ors
