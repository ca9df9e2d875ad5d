#include "ors/engineering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ors::eng {
namespace {

constexpr double pi = std::numbers::pi;

void check_dimension(const ConstrainedProblem& problem, std::span<const double> z)
{
  if (z.size() != problem.space.dimension())
    throw std::invalid_argument(problem.id + ": expected " +
                                std::to_string(problem.space.dimension()) +
                                " design variables, got " + std::to_string(z.size()));
}

ConstrainedProblem build_pressure_vessel()
{
  ConstrainedProblem p;
  p.id = "pvd";
  p.name = "pressure vessel design";
  p.space = SearchSpace{{0.0, 0.0, 10.0, 10.0}, {99.0, 99.0, 200.0, 200.0}};
  p.objective = [](std::span<const double> z) {
    return 0.6224 * z[0] * z[2] * z[3] + 1.7781 * z[1] * z[2] * z[2] +
           3.1661 * z[0] * z[0] * z[3] + 19.84 * z[0] * z[0] * z[2];
  };
  p.constraints = {
      [](std::span<const double> z) { return -z[0] + 0.0193 * z[2]; },
      [](std::span<const double> z) { return -z[1] + 0.00954 * z[2]; },
      [](std::span<const double> z) {
        return -pi * z[2] * z[2] * z[3] - 4.0 / 3.0 * pi * z[2] * z[2] * z[2] + 1296000.0;
      },
      [](std::span<const double> z) { return z[3] - 240.0; },
  };
  return p;
}

double beam_cost(std::span<const double> z)
{
  return 1.10471 * z[0] * z[0] * z[1] + 0.04811 * z[2] * z[3] * (14.0 + z[1]);
}

ConstrainedProblem build_welded_beam()
{
  ConstrainedProblem p;
  p.id = "wbd";
  p.name = "welded beam design";
  p.space = SearchSpace{{0.1, 0.1, 0.1, 0.1}, {2.0, 10.0, 10.0, 2.0}};
  p.objective = beam_cost;
  p.constraints = {
      [](std::span<const double> z) { return beam::shear_stress(z) - beam::max_shear; },
      [](std::span<const double> z) { return beam::bending_stress(z) - beam::max_bending; },
      [](std::span<const double> z) { return beam::end_deflection(z) - beam::max_deflection; },
      [](std::span<const double> z) { return z[0] - z[3]; },
      [](std::span<const double> z) { return beam::load - beam::buckling_load(z); },
      [](std::span<const double> z) { return 0.125 - z[0]; },
      [](std::span<const double> z) { return beam_cost(z) - 5.0; },
  };
  return p;
}

ConstrainedProblem build_spring_design()
{
  ConstrainedProblem p;
  p.id = "sd";
  p.name = "spring design";
  p.space = SearchSpace{{0.05, 0.25, 2.0}, {2.0, 1.30, 15.0}};
  p.objective = [](std::span<const double> z) { return (z[2] + 2.0) * z[1] * z[0] * z[0]; };
  p.constraints = {
      [](std::span<const double> z) {
        return 1.0 - z[1] * z[1] * z[1] * z[2] / (71785.0 * std::pow(z[0], 4));
      },
      [](std::span<const double> z) {
        const double d = z[0], D = z[1];
        return (4.0 * D * D - d * D) / (12566.0 * (D * d * d * d - std::pow(d, 4))) +
               1.0 / (5108.0 * d * d) - 1.0;
      },
      [](std::span<const double> z) { return 1.0 - 140.45 * z[0] / (z[1] * z[1] * z[2]); },
      [](std::span<const double> z) { return (z[0] + z[1]) / 1.5 - 1.0; },
  };
  return p;
}

} // namespace

namespace beam {

double shear_stress(std::span<const double> z)
{
  const double h = z[0], l = z[1], t = z[2];
  const double primary = load / (std::sqrt(2.0) * h * l);
  const double moment = load * (length + l / 2.0);
  const double half_depth = (h + t) / 2.0;
  const double radius = std::sqrt(l * l / 4.0 + half_depth * half_depth);
  const double polar = 2.0 * (std::sqrt(2.0) * h * l * (l * l / 12.0 + half_depth * half_depth));
  const double secondary = moment * radius / polar;
  return std::sqrt(primary * primary + 2.0 * primary * secondary * l / (2.0 * radius) +
                   secondary * secondary);
}

double bending_stress(std::span<const double> z)
{
  return 6.0 * load * length / (z[3] * z[2] * z[2]);
}

double end_deflection(std::span<const double> z)
{
  return 4.0 * load * std::pow(length, 3) / (young_modulus * std::pow(z[2], 3) * z[3]);
}

double buckling_load(std::span<const double> z)
{
  const double t = z[2], b = z[3];
  return 4.013 * young_modulus * std::sqrt(t * t * std::pow(b, 6) / 36.0) / (length * length) *
         (1.0 - t / (2.0 * length) * std::sqrt(young_modulus / (4.0 * shear_modulus)));
}

} // namespace beam

const ConstrainedProblem& pressure_vessel()
{
  static const ConstrainedProblem p = build_pressure_vessel();
  return p;
}

const ConstrainedProblem& welded_beam()
{
  static const ConstrainedProblem p = build_welded_beam();
  return p;
}

const ConstrainedProblem& spring_design()
{
  static const ConstrainedProblem p = build_spring_design();
  return p;
}

const std::vector<std::string>& problem_ids()
{
  static const std::vector<std::string> ids{"pvd", "wbd", "sd"};
  return ids;
}

bool has(std::string_view id)
{
  const auto& ids = problem_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

const ConstrainedProblem& lookup(std::string_view id)
{
  if (id == "pvd")
    return pressure_vessel();
  if (id == "wbd")
    return welded_beam();
  if (id == "sd")
    return spring_design();
  throw std::invalid_argument("unknown engineering problem id '" + std::string(id) + "'");
}

std::vector<double> constraint_values(const ConstrainedProblem& problem, std::span<const double> z)
{
  check_dimension(problem, z);
  std::vector<double> values;
  values.reserve(problem.constraints.size());
  for (const auto& g : problem.constraints)
    values.push_back(g(z));
  return values;
}

double penalized_objective(const ConstrainedProblem& problem, std::span<const double> z)
{
  double violation = 0.0;
  for (double g : constraint_values(problem, z)) {
    // A NaN constraint is treated as violated.
    const double excess = std::isnan(g) ? HUGE_VAL : std::max(0.0, g);
    violation += excess * excess;
  }
  const double f = problem.objective(z);
  if (violation == 0.0)
    return f;
  return f + problem.penalty_coefficient * violation;
}

std::vector<ConstraintStatus> feasibility_report(const ConstrainedProblem& problem,
                                                 std::span<const double> z)
{
  const auto values = constraint_values(problem, z);
  std::vector<ConstraintStatus> report;
  report.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    report.push_back({i + 1, values[i], values[i] <= feasibility_tolerance});
  return report;
}

bool is_feasible(const ConstrainedProblem& problem, std::span<const double> z)
{
  const auto values = constraint_values(problem, z);
  return std::all_of(values.begin(), values.end(),
                     [](double g) { return g <= feasibility_tolerance; });
}

ObjectiveSpec as_objective(const ConstrainedProblem& problem)
{
  ObjectiveSpec spec;
  spec.name = problem.id;
  spec.space = problem.space;
  spec.evaluate = [&problem](std::span<const double> z, RandomSource&) {
    return penalized_objective(problem, z);
  };
  return spec;
}

ObjectiveSpec tracked_objective(const ConstrainedProblem& problem,
                                std::shared_ptr<FeasibleRecord> record)
{
  ObjectiveSpec spec = as_objective(problem);
  spec.evaluate = [&problem, record = std::move(record)](std::span<const double> z,
                                                         RandomSource&) {
    const double value = penalized_objective(problem, z);
    if (is_feasible(problem, z)) {
      const double raw = problem.objective(z);
      if (std::isfinite(raw) &&
          (!record->best_feasible_value || raw < *record->best_feasible_value)) {
        record->best_feasible_value = raw;
        record->best_feasible_point.assign(z.begin(), z.end());
      }
    }
    return value;
  };
  return spec;
}

} // namespace ors::eng
