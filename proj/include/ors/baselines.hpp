#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ors/core.hpp"

namespace ors {

/// Differential evolution, rand/1/bin.
struct DeParams
{
  std::size_t population_size = 30;
  std::size_t max_iterations = 1000;
  double F = 0.5;  // differential weight
  double CR = 0.9; // crossover rate

  void validate() const;
};

struct SearchResult
{
  std::vector<double> best_point;
  double best_value = 0.0;
  ConvergenceTrace trace;
  std::size_t evaluations = 0;
};

/// Called after every generation with its 1-based number and the member
/// objective values.
using GenerationObserver = std::function<void(std::size_t, std::span<const double>)>;

/// Greedy-selection DE with clamped trial vectors. Costs
/// population_size * (max_iterations + 1) evaluations.
/// Throws std::invalid_argument when population_size < 4.
SearchResult de_optimize(const ObjectiveSpec& objective, const DeParams& params,
                         RandomSource& rng, const GenerationObserver& observer = {});

/// Uniform random sampling with the same evaluation budget as a population
/// method: population_size samples up front and population_size per
/// iteration.
SearchResult random_search(const ObjectiveSpec& objective, std::size_t population_size,
                           std::size_t max_iterations, RandomSource& rng);

} // namespace ors
