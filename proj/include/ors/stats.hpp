#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ors::stats {

/// Final best values of R independent runs of one algorithm on one problem.
struct RunSample
{
  std::string algorithm_id;
  std::string problem_id;
  std::vector<double> final_bests;
};

struct Summary
{
  double mean = 0.0;
  double std = 0.0; // sample standard deviation, R - 1 denominator
};

/// Throws std::invalid_argument for fewer than two values.
Summary summarize(std::span<const double> values);
Summary summarize(const RunSample& sample);

double mean(std::span<const double> values);
double median(std::span<const double> values);

enum class PValueMethod
{
  ExactEnumeration,
  NormalApproximation
};

const char* to_string(PValueMethod method) noexcept;

struct WilcoxonResult
{
  double statistic_W = 0.0; // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p_value = 1.0; // two-sided
  std::size_t n_effective = 0;
  PValueMethod method = PValueMethod::ExactEnumeration;
};

/// Largest effective sample size for which the exact null distribution is
/// used by default.
inline constexpr std::size_t exact_limit = 25;

/// Average ranks (1-based) of values; ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Two-sided paired signed-rank test on d = a - b. Zero differences are
/// dropped. Throws std::invalid_argument on length mismatch.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// As above, forcing the p-value method regardless of sample size.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    PValueMethod method);

/// Exact two-sided p-value for signed-rank statistic W given the ranks of
/// the non-zero |d|. Counts every one of the 2^n sign assignments through the
/// distribution of achievable rank sums.
double exact_signed_rank_p(std::span<const double> ranks, double w);

/// Normal approximation with tie-corrected variance and continuity correction.
double normal_signed_rank_p(std::span<const double> ranks, double w);

} // namespace ors::stats
