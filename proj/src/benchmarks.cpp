#include "ors/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ors::bench {
namespace {

constexpr double pi = std::numbers::pi;

// Kowalik data: a_i and 1/b_i of the standard eleven-point enzyme-rate fit.
constexpr std::array<double, 11> kowalik_a{0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                           0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
constexpr std::array<double, 11> kowalik_inv_b{0.25, 0.5, 1.0,  2.0,  4.0, 6.0,
                                               8.0,  10.0, 12.0, 14.0, 16.0};

BenchmarkEntry make(std::string id, std::string name, std::size_t dimension, double lo,
                    double hi, double fmin, Modality modality, std::vector<double> minimizer,
                    ObjectiveFn fn)
{
  BenchmarkEntry entry;
  entry.id = id;
  entry.fmin = fmin;
  entry.modality = modality;
  entry.minimizer = std::move(minimizer);
  entry.spec.name = std::move(name);
  entry.spec.space = SearchSpace::box(dimension, lo, hi);
  entry.spec.known_optimum = fmin;
  entry.spec.evaluate = [id, dimension, fn = std::move(fn)](std::span<const double> x,
                                                           RandomSource& rng) {
    if (x.size() != dimension)
      throw std::invalid_argument(id + ": expected dimension " + std::to_string(dimension) +
                                  ", got " + std::to_string(x.size()));
    return fn(x, rng);
  };
  return entry;
}

ObjectiveFn deterministic(double (*fn)(std::span<const double>))
{
  return [fn](std::span<const double> x, RandomSource&) { return fn(x); };
}

std::vector<BenchmarkEntry> build_suite()
{
  constexpr std::size_t d = 30;
  const std::vector<double> zeros(d, 0.0);
  const std::vector<double> ones(d, 1.0);
  const std::vector<double> minus_ones(d, -1.0);

  std::vector<BenchmarkEntry> s;
  s.push_back(make("Fn1", "sphere", d, -100, 100, 0, Modality::Unimodal, zeros,
                   deterministic(sphere)));
  s.push_back(make("Fn2", "schwefel_2_22", d, -10, 10, 0, Modality::Unimodal, zeros,
                   deterministic(schwefel_2_22)));
  s.push_back(make("Fn3", "schwefel_1_2", d, -100, 100, 0, Modality::Unimodal, zeros,
                   deterministic(schwefel_1_2)));
  s.push_back(make("Fn4", "schwefel_2_21", d, -100, 100, 0, Modality::Unimodal, zeros,
                   deterministic(schwefel_2_21)));
  s.push_back(make("Fn5", "rosenbrock", d, -30, 30, 0, Modality::Unimodal, ones,
                   deterministic(rosenbrock)));
  s.push_back(make("Fn6", "step", d, -100, 100, 0, Modality::Unimodal, zeros,
                   deterministic(step)));
  s.push_back(make("Fn7", "quartic_noise", d, -1.28, 1.28, 0, Modality::Unimodal, zeros,
                   quartic_noisy));
  s.push_back(make("Fn8", "rastrigin", d, -5.12, 5.12, 0, Modality::Multimodal, zeros,
                   deterministic(rastrigin)));
  s.push_back(make("Fn9", "ackley", d, -32, 32, 0, Modality::Multimodal, zeros,
                   deterministic(ackley)));
  s.push_back(make("Fn10", "griewank", d, -600, 600, 0, Modality::Multimodal, zeros,
                   deterministic(griewank)));
  s.push_back(make("Fn11", "penalized_1", d, -50, 50, 0, Modality::Multimodal, minus_ones,
                   deterministic(penalized_1)));
  s.push_back(make("Fn12", "penalized_2", d, -50, 50, 0, Modality::Multimodal, ones,
                   deterministic(penalized_2)));
  s.push_back(make("Fn13", "kowalik", 4, -5, 5, 0.00030, Modality::FixedDimMultimodal,
                   {0.192833, 0.190836, 0.123117, 0.135766}, deterministic(kowalik)));
  s.push_back(make("Fn14", "branin", 2, -5, 5, 0.398, Modality::FixedDimMultimodal,
                   {pi, 2.275}, deterministic(branin)));
  return s;
}

} // namespace

const char* to_string(Modality modality) noexcept
{
  switch (modality) {
  case Modality::Unimodal:
    return "unimodal";
  case Modality::Multimodal:
    return "multimodal";
  case Modality::FixedDimMultimodal:
    return "fixed-dimension multimodal";
  }
  return "?";
}

double sin_pi(double x)
{
  const double r = std::fmod(x, 2.0);
  if (r == std::floor(r))
    return 0.0;
  return std::sin(pi * r);
}

double cos_pi(double x)
{
  const double r = std::fmod(std::abs(x), 2.0);
  if (r == 0.5 || r == 1.5)
    return 0.0;
  return std::cos(pi * r);
}

double penalty_u(double x, double a, double k, double m)
{
  if (x > a)
    return k * std::pow(x - a, m);
  if (x < -a)
    return k * std::pow(-x - a, m);
  return 0.0;
}

double sphere(std::span<const double> x)
{
  double sum = 0.0;
  for (double v : x)
    sum += v * v;
  return sum;
}

double schwefel_2_22(std::span<const double> x)
{
  double sum = 0.0, product = 1.0;
  for (double v : x) {
    sum += std::abs(v);
    product *= std::abs(v);
  }
  return sum + product;
}

double schwefel_1_2(std::span<const double> x)
{
  double sum = 0.0, prefix = 0.0;
  for (double v : x) {
    prefix += v;
    sum += prefix * prefix;
  }
  return sum;
}

double schwefel_2_21(std::span<const double> x)
{
  double m = 0.0;
  for (double v : x)
    m = std::max(m, std::abs(v));
  return m;
}

double rosenbrock(std::span<const double> x)
{
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const double a = x[j + 1] - x[j] * x[j];
    const double b = x[j] - 1.0;
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double step(std::span<const double> x)
{
  double sum = 0.0;
  for (double v : x) {
    const double s = std::floor(v + 0.5);
    sum += s * s;
  }
  return sum;
}

double quartic(std::span<const double> x)
{
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double sq = x[j] * x[j];
    sum += static_cast<double>(j + 1) * sq * sq;
  }
  return sum;
}

double quartic_noisy(std::span<const double> x, RandomSource& rng)
{
  return quartic(x) + rng.uniform();
}

double rastrigin(std::span<const double> x)
{
  double sum = 0.0;
  for (double v : x)
    sum += v * v - 10.0 * cos_pi(2.0 * v) + 10.0;
  return sum;
}

double ackley(std::span<const double> x)
{
  const double n = static_cast<double>(x.size());
  double squares = 0.0, cosines = 0.0;
  for (double v : x) {
    squares += v * v;
    cosines += cos_pi(2.0 * v);
  }
  // Grouped so both halves cancel exactly at the origin.
  return (20.0 - 20.0 * std::exp(-0.2 * std::sqrt(squares / n))) +
         (std::numbers::e - std::exp(cosines / n));
}

double griewank(std::span<const double> x)
{
  double sum = 0.0, product = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += x[j] * x[j];
    product *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
  }
  return sum / 4000.0 - product + 1.0;
}

double penalized_1(std::span<const double> x)
{
  const std::size_t n = x.size();
  auto y = [&](std::size_t j) { return 1.0 + (x[j] + 1.0) / 4.0; };
  const double s1 = sin_pi(y(0));
  double body = 10.0 * s1 * s1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = y(j) - 1.0;
    const double s = sin_pi(y(j + 1));
    body += a * a * (1.0 + 10.0 * s * s);
  }
  const double last = y(n - 1) - 1.0;
  body += last * last;

  double penalty = 0.0;
  for (double v : x)
    penalty += penalty_u(v, 10.0, 100.0, 4.0);
  return pi / static_cast<double>(n) * body + penalty;
}

double penalized_2(std::span<const double> x)
{
  const std::size_t n = x.size();
  const double s1 = sin_pi(3.0 * x[0]);
  double body = s1 * s1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = x[j] - 1.0;
    const double s = sin_pi(3.0 * x[j + 1]);
    body += a * a * (1.0 + s * s);
  }
  const double last = x[n - 1] - 1.0;
  const double sn = sin_pi(2.0 * x[n - 1]);
  body += last * last * (1.0 + sn * sn);

  double penalty = 0.0;
  for (double v : x)
    penalty += penalty_u(v, 5.0, 100.0, 4.0);
  return 0.1 * body + penalty;
}

double kowalik(std::span<const double> x)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < kowalik_a.size(); ++i) {
    const double b = 1.0 / kowalik_inv_b[i];
    const double model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
    const double r = kowalik_a[i] - model;
    sum += r * r;
  }
  return sum;
}

double branin(std::span<const double> x)
{
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double a = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return a * a + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

const std::vector<BenchmarkEntry>& suite()
{
  static const std::vector<BenchmarkEntry> entries = build_suite();
  return entries;
}

bool has(std::string_view id)
{
  const auto& s = suite();
  return std::any_of(s.begin(), s.end(), [&](const BenchmarkEntry& e) { return e.id == id; });
}

const BenchmarkEntry& lookup(std::string_view id)
{
  for (const auto& e : suite()) {
    if (e.id == id)
      return e;
  }
  throw std::invalid_argument("unknown benchmark id '" + std::string(id) + "'");
}

double evaluate(std::string_view id, std::span<const double> x, RandomSource& rng)
{
  return lookup(id).spec.evaluate(x, rng);
}

} // namespace ors::bench
