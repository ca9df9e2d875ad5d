#include <chrono>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ors/optimizer.hpp"

using namespace ors;

namespace {

ObjectiveSpec sphere(std::size_t d, double bound = 100.0)
{
  return {"sphere", SearchSpace::box(d, -bound, bound), 0.0,
          [](std::span<const double> x, RandomSource&) {
            double s = 0.0;
            for (double v : x)
              s += v * v;
            return s;
          }};
}

OrsParams small_params(std::size_t pop, std::size_t iters)
{
  OrsParams p;
  p.population_size = pop;
  p.max_iterations = iters;
  return p;
}

OrsParams resolved_defaults()
{
  return OrsParams{}.resolved(SearchSpace::box(2, -1, 1));
}

} // namespace

TEST(DayClock, HalfHourPerIteration)
{
  DayClock c;
  EXPECT_DOUBLE_EQ(c.time_of_day(1), 0.5);
  EXPECT_DOUBLE_EQ(c.time_of_day(16), 8.0);
  EXPECT_DOUBLE_EQ(c.time_of_day(48), 0.0);
  EXPECT_DOUBLE_EQ(c.time_of_day(49), 0.5);
}

TEST(Params, Validation)
{
  EXPECT_NO_THROW(OrsParams{}.validate());
  auto bad = OrsParams{};
  bad.omega2 = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = OrsParams{};
  bad.temp_tol = 41.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = OrsParams{};
  bad.population_size = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = OrsParams{};
  bad.survival_cutoff = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Params, ResolvedScalesWithBounds)
{
  const auto p = OrsParams{}.resolved(SearchSpace::box(3, -5, 5));
  EXPECT_DOUBLE_EQ(*p.k1, 1.0);
  EXPECT_DOUBLE_EQ(*p.k2, 0.5);
  OrsParams q;
  q.k1 = 7.0;
  EXPECT_DOUBLE_EQ(*q.resolved(SearchSpace::box(3, -5, 5)).k1, 7.0);
}

TEST(Temperature, Branches)
{
  const OrsParams p;
  const std::vector<double> v{1.0, -2.0};
  EXPECT_EQ(classify_temperature(37.0, p), TemperatureBranch::Tolerable);
  EXPECT_EQ(classify_temperature(38.0, p), TemperatureBranch::Stressed);
  EXPECT_EQ(classify_temperature(40.0, p), TemperatureBranch::Lethal);

  const auto tol = temperature_delta(v, 30.0, p);
  ASSERT_TRUE(tol);
  EXPECT_NEAR((*tol)[0], 0.1, 1e-12);
  EXPECT_NEAR((*tol)[1], -0.2, 1e-12);

  const auto hot = temperature_delta(v, 39.0, p);
  ASSERT_TRUE(hot);
  EXPECT_NEAR((*hot)[0], 1.0 / 1.25 - 1.0, 1e-12);
  EXPECT_NEAR((*hot)[1], -2.0 / 1.25 + 2.0, 1e-12);

  EXPECT_FALSE(temperature_delta(v, 45.0, p));
}

TEST(Emergence, Offsets)
{
  const auto p = resolved_defaults(); // k1 = 0.2, k2 = 0.1
  const std::vector<double> v{3.0, 3.0};
  const auto early = emergence_delta(v, EmergenceOrder::Early, p);
  const auto middle = emergence_delta(v, EmergenceOrder::Middle, p);
  const auto late = emergence_delta(v, EmergenceOrder::Late, p);
  EXPECT_NEAR(early[0], 0.2, 1e-12);
  EXPECT_EQ(middle[1], 0.0);
  EXPECT_NEAR(late[0], -0.1, 1e-12);
  EXPECT_THROW(emergence_delta(v, EmergenceOrder::Early, OrsParams{}), std::invalid_argument);
}

TEST(TimeOfDay, Phases)
{
  const OrsParams p;
  const std::vector<double> v{1.0};
  EXPECT_EQ(classify_day_time(8.0, p.clock), DayPhase::Morning);
  EXPECT_EQ(classify_day_time(12.0, p.clock), DayPhase::Midday);
  EXPECT_EQ(classify_day_time(16.0, p.clock), DayPhase::Night);
  EXPECT_EQ(classify_day_time(2.0, p.clock), DayPhase::Night);
  EXPECT_THROW(classify_day_time(24.0, p.clock), std::invalid_argument);
  EXPECT_THROW(classify_day_time(-0.5, p.clock), std::invalid_argument);

  EXPECT_NEAR(time_of_day_delta(v, 9.0, p)[0], 0.2, 1e-12);
  EXPECT_NEAR(time_of_day_delta(v, 13.0, p)[0], -0.2, 1e-12);
  EXPECT_NEAR(time_of_day_delta(v, 20.0, p)[0], 0.1, 1e-12);
}

TEST(Environment, ZeroDeltaGivesZero)
{
  // k = 1, Middle order and a zero velocity make all three deltas vanish.
  auto p = resolved_defaults();
  Hatchling h;
  h.velocity = {0.0, 0.0};
  h.emergence = EmergenceOrder::Middle;
  for (double p1 : {0.0, 0.3, 1.0}) {
    const auto r1 = environmental_delta(h, {30.0, 9.0}, p, p1);
    ASSERT_TRUE(r1);
    EXPECT_EQ((*r1)[0], 0.0);
    EXPECT_EQ((*r1)[1], 0.0);
  }
}

TEST(Environment, ScalesSumByP1)
{
  auto p = resolved_defaults();
  p.k = 1.0;
  Hatchling h;
  h.velocity = {2.5, 5.0};
  h.emergence = EmergenceOrder::Middle;
  // Tolerable (+0.1 v) and night (+0.1 v): delta env = 0.2 v = (0.5, 1.0).
  const auto full = environmental_delta(h, {30.0, 20.0}, p, 1.0);
  ASSERT_TRUE(full);
  EXPECT_NEAR((*full)[0], 0.5, 1e-12);
  EXPECT_NEAR((*full)[1], 1.0, 1e-12);
  const auto half = environmental_delta(h, {30.0, 20.0}, p, 0.5);
  EXPECT_NEAR((*half)[0], 0.25, 1e-12);
  EXPECT_NEAR((*half)[1], 0.5, 1e-12);
}

TEST(Environment, LethalDominates)
{
  auto p = resolved_defaults();
  Hatchling h;
  h.velocity = {0.0, 0.0};
  h.emergence = EmergenceOrder::Early;
  EXPECT_FALSE(environmental_delta(h, {45.0, 9.0}, p, 0.5));
  RandomSource rng(1);
  EXPECT_FALSE(environmental_delta(h, {45.0, 9.0}, p, rng));
}

TEST(Trajectory, PlanarExamples)
{
  EXPECT_DOUBLE_EQ(planar_speed_change(3, 4, 6, 8), 5.0);
  EXPECT_DOUBLE_EQ(heading_change(1, 1, 2, 2), 0.0);
  const auto t = trajectory_delta(std::vector<double>{1.0, -3.0}, 0.4, 0.4, 1.0, 0.7);
  EXPECT_EQ(t.angle_delta, 0.0);
  for (double d : t.magnitude_delta)
    EXPECT_NEAR(d, 0.0, 1e-14);
}

TEST(Trajectory, RotationInvariantSpeed)
{
  RandomSource rng(19);
  const std::vector<double> v{2.0, -0.5, 10.0};
  const auto reference = trajectory_delta(v, 0.0, 0.0, 1.1, 0.6);
  for (int trial = 0; trial < 500; ++trial) {
    const double t1 = rng.uniform(0.0, std::numbers::pi / 2);
    const double t2 = rng.uniform(0.0, std::numbers::pi / 2);
    const auto d = trajectory_delta(v, t1, t2, 1.1, 0.6);
    for (std::size_t j = 0; j < v.size(); ++j)
      ASSERT_NEAR(d.magnitude_delta[j], reference.magnitude_delta[j], 1e-12);
    ASSERT_NEAR(d.angle_delta, t2 - t1, 1e-15);
  }
  EXPECT_NEAR(reference.magnitude_delta[0], 0.6 * 0.1 * 2.0, 1e-12);
}

TEST(Trajectory, SampledWithinRetentionBand)
{
  RandomSource rng(4);
  const OrsParams p;
  Hatchling h;
  h.velocity = {1.0, -1.0};
  for (int i = 0; i < 1000; ++i) {
    const auto d = trajectory_delta(h, p, rng);
    for (double m : d.magnitude_delta) {
      ASSERT_GE(m, -0.2 - 1e-12);
      ASSERT_LE(m, 0.2 + 1e-12);
    }
    ASSERT_LE(std::abs(d.angle_delta), std::numbers::pi / 2);
  }
}

TEST(Survival, Examples)
{
  const std::vector<double> equal{3.0, 3.0, 3.0};
  for (double s : survival_factors(equal))
    EXPECT_EQ(s, 1.0);
  const std::vector<double> two{1.0, 4.0};
  EXPECT_EQ(survival_factor(two, 0), 1.0);
  EXPECT_EQ(survival_factor(two, 1), 0.0);
  const std::vector<double> three{0.0, 5.0, 10.0};
  EXPECT_DOUBLE_EQ(survival_factor(three, 1), 0.5);
}

TEST(Survival, NonFiniteScoresZero)
{
  const std::vector<double> v{1.0, std::nan(""), 3.0, INFINITY};
  const auto s = survival_factors(v);
  EXPECT_EQ(s[0], 1.0);
  EXPECT_EQ(s[1], 0.0);
  EXPECT_EQ(s[2], 0.0);
  EXPECT_EQ(s[3], 0.0);
}

TEST(Survival, RangeProperty)
{
  RandomSource rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + rng.index(20));
    for (double& x : v)
      x = rng.uniform(-1e3, 1e3);
    for (double s : survival_factors(v)) {
      ASSERT_GE(s, 0.0);
      ASSERT_LE(s, 1.0);
    }
  }
}

TEST(Update, Examples)
{
  OrsParams p;
  Hatchling h;
  h.mass = 1.0;
  h.velocity = {0.0, 0.0};
  h.survival_factor = 0.1;
  const std::vector<double> best{1.0, 1.0}, zero{0.0, 0.0};
  EXPECT_EQ(survival_update(h, best, zero, p), (std::vector<double>{1.0, 1.0}));

  h.mass = 0.5;
  h.velocity = {2.0, 2.0};
  EXPECT_EQ(survival_update(h, zero, zero, p), (std::vector<double>{1.0, 1.0}));
}

TEST(Update, ClampsToBounds)
{
  OrsParams p;
  const ObjectiveSpec obj = sphere(2, 1.0);
  Hatchling h;
  h.mass = 1.0;
  h.velocity = {0.9, -0.9};
  h.survival_factor = 0.9;
  RandomSource rng(0);
  const std::vector<double> best{0.9, -0.9}, delta{-5.0, 5.0};
  const auto next = update_hatchling(h, best, delta, p, obj, rng);
  EXPECT_EQ(next.velocity, (std::vector<double>{1.0, -1.0}));
  EXPECT_DOUBLE_EQ(next.objective_value, 2.0);
}

TEST(Update, BranchContrastIdentity)
{
  RandomSource rng(23);
  OrsParams p;
  for (int trial = 0; trial < 500; ++trial) {
    Hatchling h;
    h.mass = rng.uniform();
    h.velocity = {rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
    std::vector<double> best(3), delta(3);
    for (std::size_t j = 0; j < 3; ++j) {
      best[j] = rng.uniform(-50, 50);
      delta[j] = rng.uniform(-5, 5);
    }
    Hatchling exploring = h, exploiting = h;
    exploring.survival_factor = rng.uniform(0.0, 0.29);
    exploiting.survival_factor = rng.uniform(0.3, 1.0);
    const auto a = survival_update(exploring, best, delta, p);
    const auto b = survival_update(exploiting, best, delta, p);
    for (std::size_t j = 0; j < 3; ++j)
      ASSERT_NEAR(a[j] - b[j], 2.0 * h.mass * delta[j], 1e-9);
  }
}

TEST(Update, CutoffComparison)
{
  OrsParams p;
  EXPECT_FALSE(explores(0.3, p));
  EXPECT_TRUE(explores(0.2999, p));
  p.cutoff_comparison = CutoffComparison::Inclusive;
  EXPECT_TRUE(explores(0.3, p));
}

TEST(Death, ReplacementInsideBox)
{
  const auto obj = sphere(2, 1.0);
  RandomSource rng(31);
  Hatchling dead;
  dead.alive = false;
  dead.velocity = {0.0, 0.0};
  dead.emergence = EmergenceOrder::Late;
  for (int i = 0; i < 200; ++i) {
    const auto h = handle_death(dead, obj, rng);
    ASSERT_TRUE(h.alive);
    ASSERT_TRUE(obj.space.contains(h.velocity));
    ASSERT_EQ(h.emergence, EmergenceOrder::Late);
    ASSERT_GT(h.mass, 0.0);
    ASSERT_LE(h.mass, 1.0);
  }
}

TEST(Optimize, ConstantObjective)
{
  ObjectiveSpec c{"const", SearchSpace::box(3, -1, 1), 4.0,
                  [](std::span<const double>, RandomSource&) { return 4.0; }};
  RandomSource rng(1);
  const auto r = optimize(c, small_params(10, 50), rng);
  EXPECT_EQ(r.trace.initial_best, 4.0);
  for (double b : r.trace.best_per_iteration)
    EXPECT_EQ(b, 4.0);
}

TEST(Optimize, SphereImprovesAndTraceIsMonotone)
{
  RandomSource rng(7);
  const auto r = optimize(sphere(2), small_params(20, 200), rng);
  ASSERT_EQ(r.trace.best_per_iteration.size(), 200u);
  EXPECT_LE(r.trace.best_per_iteration.back(), r.trace.initial_best);
  double prev = r.trace.initial_best;
  for (double b : r.trace.best_per_iteration) {
    ASSERT_LE(b, prev);
    prev = b;
  }
  EXPECT_EQ(r.best.objective_value, r.trace.best_per_iteration.back());
  EXPECT_EQ(r.trace.final_best_point, r.best.velocity);
}

TEST(Optimize, EvaluationBudget)
{
  for (auto [pop, iters] : {std::pair<std::size_t, std::size_t>{5, 10}, {30, 100}, {12, 1}}) {
    RandomSource rng(pop * 1000 + iters);
    const auto r = optimize(sphere(4), small_params(pop, iters), rng);
    EXPECT_EQ(r.evaluations, pop * (iters + 1));
  }
}

TEST(Optimize, PopulationBoundedAndConserved)
{
  const auto obj = sphere(5, 3.0);
  RandomSource rng(99);
  std::size_t calls = 0;
  const auto r = optimize(obj, small_params(15, 300), rng,
                          [&](std::size_t iteration, std::span<const Hatchling> pop) {
                            ++calls;
                            ASSERT_EQ(iteration, calls);
                            ASSERT_EQ(pop.size(), 15u);
                            for (const auto& h : pop) {
                              ASSERT_TRUE(h.alive);
                              ASSERT_TRUE(obj.space.contains(h.velocity));
                            }
                          });
  EXPECT_EQ(calls, 300u);
  EXPECT_GT(r.diagnostics.deaths, 0u);
}

TEST(Optimize, BranchCoverage)
{
  RandomSource rng(2024);
  const auto r = optimize(sphere(30), small_params(30, 1000), rng);
  const auto& d = r.diagnostics;
  for (auto n : d.temperature)
    EXPECT_GT(n, 0u);
  for (auto n : d.emergence)
    EXPECT_GT(n, 0u);
  for (auto n : d.day_phase)
    EXPECT_GT(n, 0u);
  EXPECT_GT(d.explore_updates, 0u);
  EXPECT_GT(d.exploit_updates, 0u);
  EXPECT_EQ(d.temperature[2], d.deaths);
}

TEST(Optimize, SameSeedSameResult)
{
  RandomSource a(5), b(5);
  const auto ra = optimize(sphere(10), small_params(10, 100), a);
  const auto rb = optimize(sphere(10), small_params(10, 100), b);
  EXPECT_EQ(ra.trace.best_per_iteration, rb.trace.best_per_iteration);
  EXPECT_EQ(ra.best.velocity, rb.best.velocity);
}

TEST(Optimize, NonFiniteObjectiveNeverBest)
{
  ObjectiveSpec obj{"holes", SearchSpace::box(2, -1, 1), std::nullopt,
                    [](std::span<const double> x, RandomSource&) {
                      return x[0] > 0.0 ? std::nan("") : x[0] * x[0] + x[1] * x[1];
                    }};
  RandomSource rng(17);
  const auto r = optimize(obj, small_params(20, 100), rng);
  EXPECT_TRUE(std::isfinite(r.best.objective_value));
  EXPECT_GT(r.diagnostics.non_finite_evaluations, 0u);
  for (double b : r.trace.best_per_iteration)
    EXPECT_TRUE(std::isfinite(b));
}

TEST(Optimize, RejectsInvalidParams)
{
  RandomSource rng(1);
  EXPECT_THROW(optimize(sphere(2), small_params(1, 10), rng), std::invalid_argument);
}
