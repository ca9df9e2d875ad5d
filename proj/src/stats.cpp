#include "ors/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ors::stats {

double mean(std::span<const double> values)
{
  if (values.empty())
    throw std::invalid_argument("mean: empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values)
{
  if (values.empty())
    throw std::invalid_argument("median: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

Summary summarize(std::span<const double> values)
{
  if (values.size() < 2)
    throw std::invalid_argument("summarize: standard deviation needs at least two runs");
  Summary s;
  s.mean = mean(values);
  double ss = 0.0;
  for (double v : values)
    ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

Summary summarize(const RunSample& sample)
{
  return summarize(sample.final_bests);
}

const char* to_string(PValueMethod method) noexcept
{
  return method == PValueMethod::ExactEnumeration ? "exact" : "normal";
}

std::vector<double> average_ranks(std::span<const double> values)
{
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]])
      ++j;
    // Positions i..j (0-based) share rank (i + j)/2 + 1.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double exact_signed_rank_p(std::span<const double> ranks, double w)
{
  const std::size_t n = ranks.size();
  if (n == 0)
    return 1.0;
  // Average ranks are multiples of 1/2, so doubled ranks are integers.
  std::vector<std::size_t> doubled(n);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
    total += doubled[i];
  }
  // counts[s]: number of sign assignments whose positive doubled-rank sum is s.
  std::vector<double> counts(total + 1, 0.0);
  counts[0] = 1.0;
  std::size_t reach = 0;
  for (std::size_t r : doubled) {
    for (std::size_t s = reach + 1; s-- > 0;)
      counts[s + r] += counts[s];
    reach += r;
  }
  const auto limit = static_cast<long long>(std::floor(2.0 * w + 1e-9));
  double tail = 0.0;
  for (long long s = 0; s <= limit && s <= static_cast<long long>(total); ++s)
    tail += counts[static_cast<std::size_t>(s)];
  const double p = 2.0 * tail / std::ldexp(1.0, static_cast<int>(n));
  return std::min(1.0, p);
}

double normal_signed_rank_p(std::span<const double> ranks, double w)
{
  const std::size_t n = ranks.size();
  if (n == 0)
    return 1.0;
  double sum = 0.0, sum_sq = 0.0;
  for (double r : ranks) {
    sum += r;
    sum_sq += r * r;
  }
  // With average ranks sum_sq / 4 equals n(n+1)(2n+1)/24 - sum(t^3 - t)/48.
  const double expected = sum / 2.0;
  const double sd = std::sqrt(sum_sq / 4.0);
  if (sd == 0.0)
    return 1.0;
  const double z = std::max(0.0, std::abs(w - expected) - 0.5) / sd;
  return std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

namespace {

WilcoxonResult signed_rank(std::span<const double> a, std::span<const double> b,
                           std::optional<PValueMethod> forced)
{
  if (a.size() != b.size())
    throw std::invalid_argument("wilcoxon_signed_rank: samples differ in length");

  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (std::isnan(d))
      throw std::invalid_argument("wilcoxon_signed_rank: NaN difference at index " +
                                  std::to_string(i));
    if (d == 0.0)
      continue;
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }

  WilcoxonResult result;
  result.n_effective = magnitudes.size();
  if (result.n_effective == 0) {
    result.p_value = 1.0;
    result.method = forced.value_or(PValueMethod::ExactEnumeration);
    return result;
  }

  const auto ranks = average_ranks(magnitudes);
  for (std::size_t i = 0; i < ranks.size(); ++i)
    (positive[i] ? result.w_plus : result.w_minus) += ranks[i];
  result.statistic_W = std::min(result.w_plus, result.w_minus);

  result.method = forced.value_or(result.n_effective <= exact_limit
                                      ? PValueMethod::ExactEnumeration
                                      : PValueMethod::NormalApproximation);
  if (result.method == PValueMethod::ExactEnumeration && result.n_effective > 60)
    throw std::invalid_argument("wilcoxon_signed_rank: exact enumeration limited to 60 pairs");
  result.p_value = result.method == PValueMethod::ExactEnumeration
                       ? exact_signed_rank_p(ranks, result.statistic_W)
                       : normal_signed_rank_p(ranks, result.statistic_W);
  return result;
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b)
{
  return signed_rank(a, b, std::nullopt);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    PValueMethod method)
{
  return signed_rank(a, b, method);
}

} // namespace ors::stats
