#include "ors/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ors {

void DeParams::validate() const
{
  if (population_size < 4)
    throw std::invalid_argument("DeParams: rand/1 needs population_size >= 4, got " +
                                std::to_string(population_size));
  if (max_iterations < 1)
    throw std::invalid_argument("DeParams: max_iterations must be at least 1");
  if (!(F > 0.0))
    throw std::invalid_argument("DeParams: F must be positive");
  if (!(CR >= 0.0 && CR <= 1.0))
    throw std::invalid_argument("DeParams: CR must lie in [0, 1]");
}

SearchResult de_optimize(const ObjectiveSpec& objective, const DeParams& params,
                         RandomSource& rng, const GenerationObserver& observer)
{
  params.validate();
  objective.space.validate();
  const std::size_t n = params.population_size;
  const std::size_t d = objective.space.dimension();

  SearchResult result;
  std::vector<std::vector<double>> population(n);
  std::vector<double> values(n);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    population[i] = objective.space.sample(rng);
    values[i] = objective.evaluate(population[i], rng);
    ++result.evaluations;
    if (better_than(values[i], values[best]))
      best = i;
  }
  result.trace.initial_best = values[best];
  result.trace.best_per_iteration.reserve(params.max_iterations);

  std::vector<std::vector<double>> next = population;
  std::vector<double> next_values = values;
  std::vector<double> trial(d);
  for (std::size_t iteration = 0; iteration < params.max_iterations; ++iteration) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r1, r2, r3;
      do
        r1 = rng.index(n);
      while (r1 == i);
      do
        r2 = rng.index(n);
      while (r2 == i || r2 == r1);
      do
        r3 = rng.index(n);
      while (r3 == i || r3 == r1 || r3 == r2);

      const std::size_t forced = rng.index(d);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == forced || rng.uniform() < params.CR)
          trial[j] = population[r1][j] + params.F * (population[r2][j] - population[r3][j]);
        else
          trial[j] = population[i][j];
      }
      objective.space.clamp(trial);
      const double value = objective.evaluate(trial, rng);
      ++result.evaluations;

      // Ties replace the target so the population can drift across plateaus.
      if (better_than(value, values[i]) || value == values[i] || !std::isfinite(values[i])) {
        next[i] = trial;
        next_values[i] = value;
      } else {
        next[i] = population[i];
        next_values[i] = values[i];
      }
    }
    population.swap(next);
    values.swap(next_values);
    for (std::size_t i = 0; i < n; ++i) {
      if (better_than(values[i], values[best]))
        best = i;
    }
    result.trace.best_per_iteration.push_back(values[best]);
    if (observer)
      observer(iteration + 1, values);
  }

  result.best_point = population[best];
  result.best_value = values[best];
  result.trace.final_best_point = result.best_point;
  return result;
}

SearchResult random_search(const ObjectiveSpec& objective, std::size_t population_size,
                           std::size_t max_iterations, RandomSource& rng)
{
  if (population_size < 1)
    throw std::invalid_argument("random_search: population_size must be positive");
  objective.space.validate();

  SearchResult result;
  auto sample_batch = [&] {
    for (std::size_t i = 0; i < population_size; ++i) {
      std::vector<double> x = objective.space.sample(rng);
      const double value = objective.evaluate(x, rng);
      ++result.evaluations;
      if (result.best_point.empty() || better_than(value, result.best_value)) {
        result.best_point = std::move(x);
        result.best_value = value;
      }
    }
  };

  sample_batch();
  result.trace.initial_best = result.best_value;
  result.trace.best_per_iteration.reserve(max_iterations);
  for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
    sample_batch();
    result.trace.best_per_iteration.push_back(result.best_value);
  }
  result.trace.final_best_point = result.best_point;
  return result;
}

} // namespace ors
