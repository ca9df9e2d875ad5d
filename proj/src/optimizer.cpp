#include "ors/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ors {
namespace {

void require(bool condition, const char* message)
{
  if (!condition)
    throw std::invalid_argument(std::string("OrsParams: ") + message);
}

std::vector<double> scaled(std::span<const double> v, double factor)
{
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    out[j] = v[j] * factor;
  return out;
}

} // namespace

double DayClock::time_of_day(std::size_t iteration) const
{
  return std::fmod(static_cast<double>(iteration) * hours_per_iteration, day_length);
}

void OrsParams::validate() const
{
  require(omega1 > 1.0 && omega2 > 1.0 && omega3 > 1.0 && omega4 > 1.0 && omega5 > 1.0,
          "every omega must exceed 1");
  require(k > 0.0, "k must be positive");
  require(!k1 || *k1 > 0.0, "k1 must be positive");
  require(!k2 || *k2 > 0.0, "k2 must be positive");
  require(temp_tol < temp_max, "temp_tol must be below temp_max");
  require(temp_sample_low < temp_sample_high, "temperature sample range is empty");
  require(clock.day_length > 0.0 && clock.hours_per_iteration > 0.0,
          "day length and hours per iteration must be positive");
  require(0.0 <= clock.t1 && clock.t1 < clock.t2 && clock.t2 < clock.t3 &&
              clock.t3 < clock.day_length,
          "day segments must satisfy 0 <= t1 < t2 < t3 < day_length");
  require(survival_cutoff > 0.0 && survival_cutoff < 1.0, "survival_cutoff must lie in (0, 1)");
  require(0.0 < retention_low && retention_low <= retention_high,
          "retention range must be positive and ordered");
  require(population_size >= 2, "population_size must be at least 2");
  require(max_iterations >= 1, "max_iterations must be at least 1");
}

OrsParams OrsParams::resolved(const SearchSpace& space) const
{
  OrsParams out = *this;
  const double width = space.mean_width();
  if (!out.k1)
    out.k1 = 0.1 * width;
  if (!out.k2)
    out.k2 = 0.05 * width;
  return out;
}

TemperatureBranch classify_temperature(double temp, const OrsParams& params)
{
  if (temp <= params.temp_tol)
    return TemperatureBranch::Tolerable;
  if (temp < params.temp_max)
    return TemperatureBranch::Stressed;
  return TemperatureBranch::Lethal;
}

DayPhase classify_day_time(double day_time, const DayClock& clock)
{
  if (!(day_time >= 0.0 && day_time < clock.day_length))
    throw std::invalid_argument("classify_day_time: time outside [0, day_length)");
  if (clock.t1 <= day_time && day_time < clock.t2)
    return DayPhase::Morning;
  if (clock.t2 <= day_time && day_time < clock.t3)
    return DayPhase::Midday;
  return DayPhase::Night;
}

std::optional<std::vector<double>> temperature_delta(std::span<const double> v, double temp,
                                                     const OrsParams& params)
{
  switch (classify_temperature(temp, params)) {
  case TemperatureBranch::Tolerable:
    return scaled(v, params.omega1 - 1.0);
  case TemperatureBranch::Stressed:
    return scaled(v, (1.0 - params.omega2) / params.omega2);
  case TemperatureBranch::Lethal:
    break;
  }
  return std::nullopt;
}

std::vector<double> emergence_delta(std::span<const double> v, EmergenceOrder order,
                                    const OrsParams& params)
{
  if (!params.k1 || !params.k2)
    throw std::invalid_argument("emergence_delta: k1/k2 unresolved");
  std::vector<double> delta = scaled(v, params.k - 1.0);
  double offset = 0.0;
  if (order == EmergenceOrder::Early)
    offset = *params.k1;
  else if (order == EmergenceOrder::Late)
    offset = -*params.k2;
  for (double& d : delta)
    d += offset;
  return delta;
}

std::vector<double> time_of_day_delta(std::span<const double> v, double day_time,
                                      const OrsParams& params)
{
  switch (classify_day_time(day_time, params.clock)) {
  case DayPhase::Morning:
    return scaled(v, params.omega3 - 1.0);
  case DayPhase::Midday:
    return scaled(v, (1.0 - params.omega4) / params.omega4);
  case DayPhase::Night:
    break;
  }
  return scaled(v, params.omega5 - 1.0);
}

std::optional<std::vector<double>> environmental_delta(const Hatchling& h,
                                                       const EnvironmentState& env,
                                                       const OrsParams& params, double p1)
{
  auto delta = temperature_delta(h.velocity, env.sand_temp, params);
  if (!delta)
    return std::nullopt;
  const auto emergence = emergence_delta(h.velocity, h.emergence, params);
  const auto time = time_of_day_delta(h.velocity, env.day_time, params);
  for (std::size_t j = 0; j < delta->size(); ++j)
    (*delta)[j] = p1 * ((*delta)[j] + emergence[j] + time[j]);
  return delta;
}

std::optional<std::vector<double>> environmental_delta(const Hatchling& h,
                                                       const EnvironmentState& env,
                                                       const OrsParams& params, RandomSource& rng)
{
  return environmental_delta(h, env, params, rng.uniform());
}

double planar_speed_change(double vx0, double vy0, double vx1, double vy1)
{
  return std::hypot(vx1, vy1) - std::hypot(vx0, vy0);
}

double heading_change(double vx0, double vy0, double vx1, double vy1)
{
  return std::atan2(vy1, vx1) - std::atan2(vy0, vx0);
}

TrajectoryDelta trajectory_delta(std::span<const double> v, double theta1, double theta2,
                                 double retention, double p2)
{
  TrajectoryDelta out;
  out.magnitude_delta.resize(v.size());
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double speed = std::abs(v[j]);
    const double next = retention * speed;
    out.magnitude_delta[j] = p2 * planar_speed_change(speed * c1, speed * s1, next * c2, next * s2);
  }
  out.angle_delta = theta2 - theta1;
  return out;
}

TrajectoryDelta trajectory_delta(const Hatchling& h, const OrsParams& params, RandomSource& rng)
{
  constexpr double quarter_turn = std::numbers::pi / 2.0;
  const double theta1 = rng.uniform(0.0, quarter_turn);
  const double theta2 = rng.uniform(0.0, quarter_turn);
  const double retention = rng.uniform(params.retention_low, params.retention_high);
  const double p2 = rng.uniform();
  return trajectory_delta(h.velocity, theta1, theta2, retention, p2);
}

double survival_factor(std::span<const double> objective_values, std::size_t i)
{
  if (objective_values.size() < 2)
    throw std::invalid_argument("survival_factor: need at least two values");
  if (i >= objective_values.size())
    throw std::out_of_range("survival_factor: index out of range");
  if (!std::isfinite(objective_values[i]))
    return 0.0;

  bool any = false;
  double lo = 0.0, hi = 0.0;
  for (double f : objective_values) {
    if (!std::isfinite(f))
      continue;
    lo = any ? std::min(lo, f) : f;
    hi = any ? std::max(hi, f) : f;
    any = true;
  }
  if (hi == lo)
    return 1.0;
  return std::clamp((hi - objective_values[i]) / (hi - lo), 0.0, 1.0);
}

std::vector<double> survival_factors(std::span<const double> objective_values)
{
  std::vector<double> out(objective_values.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = survival_factor(objective_values, i);
  return out;
}

void assign_survival_factors(std::span<Hatchling> population)
{
  std::vector<double> values(population.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = population[i].objective_value;
  const auto factors = survival_factors(values);
  for (std::size_t i = 0; i < values.size(); ++i)
    population[i].survival_factor = factors[i];
}

bool explores(double survival_factor, const OrsParams& params)
{
  return params.cutoff_comparison == CutoffComparison::Strict
             ? survival_factor < params.survival_cutoff
             : survival_factor <= params.survival_cutoff;
}

std::vector<double> survival_update(const Hatchling& h, std::span<const double> best_velocity,
                                    std::span<const double> resultant, const OrsParams& params)
{
  if (best_velocity.size() != h.velocity.size() || resultant.size() != h.velocity.size())
    throw std::invalid_argument("survival_update: dimension mismatch");
  const double sign = explores(h.survival_factor, params) ? 1.0 : -1.0;
  std::vector<double> next(h.velocity.size());
  for (std::size_t j = 0; j < next.size(); ++j)
    next[j] = h.mass * ((h.velocity[j] + sign * resultant[j]) + best_velocity[j]);
  return next;
}

Hatchling update_hatchling(const Hatchling& h, std::span<const double> best_velocity,
                           std::span<const double> resultant, const OrsParams& params,
                           const ObjectiveSpec& objective, RandomSource& rng)
{
  Hatchling next = h;
  next.velocity = survival_update(h, best_velocity, resultant, params);
  objective.space.clamp(next.velocity);
  next.objective_value = objective.evaluate(next.velocity, rng);
  return next;
}

Hatchling handle_death(const Hatchling& h, const ObjectiveSpec& objective, RandomSource& rng)
{
  Hatchling fresh = spawn_hatchling(objective, h.emergence, rng);
  fresh.survival_factor = h.survival_factor;
  return fresh;
}

OrsResult optimize(const ObjectiveSpec& objective, const OrsParams& params, RandomSource& rng,
                   const PopulationObserver& observer)
{
  params.validate();
  objective.space.validate();
  const OrsParams p = params.resolved(objective.space);

  auto evaluations = std::make_shared<std::size_t>(0);
  const ObjectiveSpec counted = counting(objective, evaluations);

  OrsResult result;
  std::vector<Hatchling> population =
      initialize_population(counted, p.population_size, rng, p.emergence_assignment);

  std::size_t best_index = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (better_than(population[i].objective_value, population[best_index].objective_value))
      best_index = i;
  }
  Hatchling best = population[best_index];

  ConvergenceTrace& trace = result.trace;
  trace.initial_best = best.objective_value;
  trace.best_per_iteration.reserve(p.max_iterations);
  OrsDiagnostics& diag = result.diagnostics;
  for (const Hatchling& h : population) {
    if (!std::isfinite(h.objective_value))
      ++diag.non_finite_evaluations;
  }

  std::vector<double> resultant;
  for (std::size_t iteration = 1; iteration <= p.max_iterations; ++iteration) {
    EnvironmentState env;
    env.day_time = p.clock.time_of_day(iteration);
    const auto phase = classify_day_time(env.day_time, p.clock);

    for (Hatchling& h : population) {
      env.sand_temp = rng.uniform(p.temp_sample_low, p.temp_sample_high);
      ++diag.temperature[static_cast<std::size_t>(classify_temperature(env.sand_temp, p))];
      ++diag.emergence[static_cast<std::size_t>(h.emergence)];
      ++diag.day_phase[static_cast<std::size_t>(phase)];

      auto r1 = environmental_delta(h, env, p, rng);
      if (!r1) {
        h.alive = false;
        h = handle_death(h, counted, rng);
        ++diag.deaths;
      } else {
        const TrajectoryDelta r2 = trajectory_delta(h, p, rng);
        resultant.resize(r1->size());
        for (std::size_t j = 0; j < resultant.size(); ++j)
          resultant[j] = (*r1)[j] + r2.magnitude_delta[j];
        if (explores(h.survival_factor, p))
          ++diag.explore_updates;
        else
          ++diag.exploit_updates;
        h = update_hatchling(h, best.velocity, resultant, p, counted, rng);
      }

      if (!std::isfinite(h.objective_value))
        ++diag.non_finite_evaluations;
      else if (better_than(h.objective_value, best.objective_value))
        best = h;
    }

    assign_survival_factors(population);
    trace.best_per_iteration.push_back(best.objective_value);
    if (observer)
      observer(iteration, population);
  }

  trace.final_best_point = best.velocity;
  result.best = std::move(best);
  result.evaluations = *evaluations;
  return result;
}

} // namespace ors
