#include "ors/core.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ors/optimizer.hpp"

namespace ors {

std::size_t RandomSource::index(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("RandomSource::index: empty range");
  // Rejection sampling keeps the draw unbiased for any n.
  const auto range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = engine_();
  while (x >= limit)
    x = engine_();
  return static_cast<std::size_t>(x % range);
}

SearchSpace SearchSpace::box(std::size_t dimension, double lo, double hi)
{
  SearchSpace space{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
  space.validate();
  return space;
}

void SearchSpace::validate() const
{
  if (lower.empty())
    throw std::invalid_argument("SearchSpace: dimension must be positive");
  if (lower.size() != upper.size())
    throw std::invalid_argument("SearchSpace: lower and upper bounds differ in length");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || !(lower[j] < upper[j]))
      throw std::invalid_argument("SearchSpace: bound " + std::to_string(j) +
                                  " is not a finite interval with lower < upper");
  }
}

bool SearchSpace::contains(std::span<const double> x) const
{
  if (x.size() != dimension())
    return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= lower[j] && x[j] <= upper[j]))
      return false;
  }
  return true;
}

void SearchSpace::clamp(std::span<double> x) const
{
  for (std::size_t j = 0; j < x.size(); ++j) {
    // NaN components land on the lower bound.
    if (std::isnan(x[j]))
      x[j] = lower[j];
    x[j] = std::clamp(x[j], lower[j], upper[j]);
  }
}

std::vector<double> SearchSpace::sample(RandomSource& rng) const
{
  std::vector<double> x(dimension());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = rng.uniform(lower[j], upper[j]);
  return x;
}

double SearchSpace::mean_width() const
{
  double total = 0.0;
  for (std::size_t j = 0; j < lower.size(); ++j)
    total += upper[j] - lower[j];
  return total / static_cast<double>(lower.size());
}

const char* to_string(EmergenceOrder order) noexcept
{
  switch (order) {
  case EmergenceOrder::Early:
    return "early";
  case EmergenceOrder::Middle:
    return "middle";
  case EmergenceOrder::Late:
    return "late";
  }
  return "?";
}

EmergenceOrder tercile_emergence(std::size_t i, std::size_t n)
{
  const std::size_t early = (n + 2) / 3;
  const std::size_t middle = (n - early + 1) / 2;
  if (i < early)
    return EmergenceOrder::Early;
  if (i < early + middle)
    return EmergenceOrder::Middle;
  return EmergenceOrder::Late;
}

std::vector<double> momentum_fitness(const Hatchling& h)
{
  std::vector<double> f(h.velocity.size());
  std::transform(h.velocity.begin(), h.velocity.end(), f.begin(),
                 [&](double v) { return h.mass * v; });
  return f;
}

Hatchling spawn_hatchling(const ObjectiveSpec& objective, EmergenceOrder order,
                          RandomSource& rng)
{
  Hatchling h;
  h.velocity = objective.space.sample(rng);
  // 1 - U[0,1) lies in (0, 1].
  h.mass = 1.0 - rng.uniform();
  h.emergence = order;
  h.alive = true;
  h.objective_value = objective.evaluate(h.velocity, rng);
  return h;
}

std::vector<Hatchling> initialize_population(const ObjectiveSpec& objective, std::size_t n,
                                             RandomSource& rng,
                                             EmergenceAssignment assignment)
{
  if (n < 2)
    throw std::invalid_argument("initialize_population: need at least two hatchlings");
  objective.space.validate();

  std::vector<Hatchling> population;
  population.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EmergenceOrder order = assignment == EmergenceAssignment::Tercile
                                     ? tercile_emergence(i, n)
                                     : static_cast<EmergenceOrder>(rng.index(3));
    population.push_back(spawn_hatchling(objective, order, rng));
  }
  assign_survival_factors(population);
  return population;
}

ObjectiveSpec counting(ObjectiveSpec objective, std::shared_ptr<std::size_t> counter)
{
  auto inner = std::move(objective.evaluate);
  objective.evaluate = [inner = std::move(inner), counter = std::move(counter)](
                           std::span<const double> x, RandomSource& rng) {
    ++*counter;
    return inner(x, rng);
  };
  return objective;
}

} // namespace ors
