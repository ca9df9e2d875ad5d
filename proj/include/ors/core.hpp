#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ors {

/// Seeded uniform random stream. Built on std::mt19937_64, whose output
/// sequence is fixed by the standard; the real and integer conversions are
/// done here rather than through std::*_distribution so a seed yields the
/// same trajectory on every standard library.
class RandomSource
{
public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept
  {
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Box-bounded search domain. Objectives are always minimized.
struct SearchSpace
{
  std::vector<double> lower;
  std::vector<double> upper;

  static SearchSpace box(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const noexcept { return lower.size(); }

  /// Throws std::invalid_argument unless the bounds are non-empty, of equal
  /// length, finite and strictly ordered.
  void validate() const;

  bool contains(std::span<const double> x) const;
  void clamp(std::span<double> x) const;

  /// Uniform sample inside the box.
  std::vector<double> sample(RandomSource& rng) const;

  double mean_width() const;
};

/// Objective callable. The random source is only consumed by objectives
/// that are defined with noise; it is the caller's stream, so noisy runs stay
/// reproducible.
using ObjectiveFn = std::function<double(std::span<const double>, RandomSource&)>;

struct ObjectiveSpec
{
  std::string name;
  SearchSpace space;
  std::optional<double> known_optimum;
  ObjectiveFn evaluate;
};

enum class EmergenceOrder
{
  Early,
  Middle,
  Late
};

const char* to_string(EmergenceOrder order) noexcept;

enum class EmergenceAssignment
{
  Tercile,
  Random
};

/// One candidate solution. The velocity vector is the decision vector.
struct Hatchling
{
  double mass = 1.0;
  std::vector<double> velocity;
  double objective_value = 0.0;
  double survival_factor = 0.0;
  EmergenceOrder emergence = EmergenceOrder::Middle;
  bool alive = true;
};

/// Best-so-far series of one run. best_per_iteration[t] is the incumbent
/// after iteration t + 1; initial_best is the incumbent of the initial
/// population.
struct ConvergenceTrace
{
  int run_id = 0;
  double initial_best = 0.0;
  std::vector<double> best_per_iteration;
  std::vector<double> final_best_point;
};

/// Ordering used for incumbent selection: non-finite values compare worse
/// than every finite value.
inline bool better_than(double candidate, double incumbent) noexcept
{
  if (!std::isfinite(candidate))
    return false;
  return !std::isfinite(incumbent) || candidate < incumbent;
}

/// Emergence slot for population index i under the tercile rule: the first
/// ceil(n/3) are Early, the next ceil((n - early)/2) Middle, the rest Late,
/// so the three counts never differ by more than one.
EmergenceOrder tercile_emergence(std::size_t i, std::size_t n);

/// Momentum m * v, elementwise.
std::vector<double> momentum_fitness(const Hatchling& h);

/// A fresh hatchling: uniform velocity inside the box, mass uniform in (0, 1],
/// objective evaluated. survival_factor is left at zero.
Hatchling spawn_hatchling(const ObjectiveSpec& objective, EmergenceOrder order,
                          RandomSource& rng);

/// n hatchlings with evaluated objectives and survival factors.
/// Throws std::invalid_argument when n < 2.
std::vector<Hatchling> initialize_population(
    const ObjectiveSpec& objective, std::size_t n, RandomSource& rng,
    EmergenceAssignment assignment = EmergenceAssignment::Tercile);

/// Wraps an objective so that every call increments *counter.
ObjectiveSpec counting(ObjectiveSpec objective, std::shared_ptr<std::size_t> counter);

} // namespace ors
