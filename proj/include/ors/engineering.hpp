#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ors/core.hpp"

namespace ors::eng {

using Function = std::function<double(std::span<const double>)>;

/// Constrained design problem: minimize objective(z) subject to g_i(z) <= 0.
struct ConstrainedProblem
{
  std::string id;   // "pvd", "wbd", "sd"
  std::string name;
  SearchSpace space;
  Function objective;
  std::vector<Function> constraints;
  double penalty_coefficient = 1e6;
};

/// Constraint values at or below this count as satisfied.
inline constexpr double feasibility_tolerance = 1e-6;

/// Pressure vessel: z = (shell thickness, head thickness, inner radius,
/// cylinder length).
const ConstrainedProblem& pressure_vessel();

/// Welded beam: z = (weld thickness h, weld length l, bar height t, bar
/// thickness b).
const ConstrainedProblem& welded_beam();

/// Tension/compression spring: z = (wire diameter d, mean coil diameter D,
/// active coils N).
const ConstrainedProblem& spring_design();

const std::vector<std::string>& problem_ids();
bool has(std::string_view id);
/// Throws std::invalid_argument naming the id if unknown.
const ConstrainedProblem& lookup(std::string_view id);

/// Welded-beam load case and allowables.
namespace beam {
inline constexpr double load = 6000.0;          // P, lb
inline constexpr double length = 14.0;          // L, in
inline constexpr double young_modulus = 30e6;   // E, psi
inline constexpr double shear_modulus = 12e6;   // G, psi
inline constexpr double max_shear = 13600.0;    // tau_max, psi
inline constexpr double max_bending = 30000.0;  // sigma_max, psi
inline constexpr double max_deflection = 0.25;  // delta_max, in

double shear_stress(std::span<const double> z);
double bending_stress(std::span<const double> z);
double end_deflection(std::span<const double> z);
double buckling_load(std::span<const double> z);
} // namespace beam

std::vector<double> constraint_values(const ConstrainedProblem& problem, std::span<const double> z);

/// f(z) + c * sum(max(0, g_i(z))^2).
double penalized_objective(const ConstrainedProblem& problem, std::span<const double> z);

struct ConstraintStatus
{
  std::size_t index; // 1-based, matching g_1 .. g_m
  double value;
  bool satisfied;
};

std::vector<ConstraintStatus> feasibility_report(const ConstrainedProblem& problem,
                                                 std::span<const double> z);

bool is_feasible(const ConstrainedProblem& problem, std::span<const double> z);

/// Best feasible design seen by a tracked objective.
struct FeasibleRecord
{
  std::optional<double> best_feasible_value;
  std::vector<double> best_feasible_point;
};

/// The penalized objective as an ObjectiveSpec.
ObjectiveSpec as_objective(const ConstrainedProblem& problem);

/// As as_objective, additionally recording the best feasible raw objective
/// of every evaluated design into *record. One record per run.
ObjectiveSpec tracked_objective(const ConstrainedProblem& problem,
                                std::shared_ptr<FeasibleRecord> record);

} // namespace ors::eng
