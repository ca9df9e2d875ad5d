#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ors/core.hpp"

namespace ors::bench {

enum class Modality
{
  Unimodal,
  Multimodal,
  FixedDimMultimodal
};

const char* to_string(Modality modality) noexcept;

struct BenchmarkEntry
{
  std::string id; // "Fn1" .. "Fn14"
  ObjectiveSpec spec;
  double fmin = 0.0;
  Modality modality = Modality::Unimodal;
  std::vector<double> minimizer; // a known global minimizer
};

/// sin(pi * x) and cos(pi * x) with exact zeros at integer and half-integer
/// arguments respectively.
double sin_pi(double x);
double cos_pi(double x);

/// Penalty term u(x, a, k, m) used by the penalized functions.
double penalty_u(double x, double a, double k, double m);

double sphere(std::span<const double> x);
double schwefel_2_22(std::span<const double> x);
double schwefel_1_2(std::span<const double> x);
double schwefel_2_21(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double step(std::span<const double> x);
/// Noise-free part of the noisy quartic.
double quartic(std::span<const double> x);
double quartic_noisy(std::span<const double> x, RandomSource& rng);
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double griewank(std::span<const double> x);
double penalized_1(std::span<const double> x);
double penalized_2(std::span<const double> x);
double kowalik(std::span<const double> x);
double branin(std::span<const double> x);

/// The fourteen-function suite in id order.
const std::vector<BenchmarkEntry>& suite();

/// Registry lookup; throws std::invalid_argument naming the id if unknown.
const BenchmarkEntry& lookup(std::string_view id);

bool has(std::string_view id);

/// Evaluates a suite function. Throws std::invalid_argument when x has the
/// wrong dimension.
double evaluate(std::string_view id, std::span<const double> x, RandomSource& rng);

} // namespace ors::bench
