#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ors/core.hpp"
#include "ors/stats.hpp"

using namespace ors;
using namespace ors::stats;

namespace {

// Two-sided p by listing every sign pattern of the ranked |d|.
double brute_force_p(const std::vector<double>& ranks, double w)
{
  const std::size_t n = ranks.size();
  const std::size_t patterns = std::size_t{1} << n;
  std::size_t at_most = 0;
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    double plus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i))
        plus += ranks[i];
    if (plus <= w + 1e-9)
      ++at_most;
  }
  return std::min(1.0, 2.0 * static_cast<double>(at_most) / static_cast<double>(patterns));
}

std::vector<double> abs_ranks(const std::vector<double>& a, const std::vector<double>& b)
{
  std::vector<double> mags;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      mags.push_back(std::abs(a[i] - b[i]));
  return average_ranks(mags);
}

} // namespace

TEST(Summary, Examples)
{
  const std::vector<double> a{1, 2, 3};
  EXPECT_DOUBLE_EQ(summarize(a).mean, 2.0);
  EXPECT_DOUBLE_EQ(summarize(a).std, 1.0);
  const std::vector<double> c{4.5, 4.5, 4.5};
  EXPECT_DOUBLE_EQ(summarize(c).mean, 4.5);
  EXPECT_EQ(summarize(c).std, 0.0);
  const std::vector<double> t{0.1, 0.3};
  EXPECT_NEAR(summarize(t).mean, 0.2, 1e-15);
  EXPECT_NEAR(summarize(t).std, std::sqrt(0.02), 1e-15);
  EXPECT_THROW(summarize(std::vector<double>{1.0}), std::invalid_argument);
  RunSample s{"ors", "Fn1", {1, 2, 3}};
  EXPECT_DOUBLE_EQ(summarize(s).std, 1.0);
}

TEST(Summary, MeanMedian)
{
  EXPECT_DOUBLE_EQ(mean(std::vector<double>{1, 2, 6}), 3.0);
  EXPECT_DOUBLE_EQ(median(std::vector<double>{5, 1, 3}), 3.0);
  EXPECT_DOUBLE_EQ(median(std::vector<double>{4, 1, 3, 2}), 2.5);
}

TEST(Ranks, AverageTies)
{
  const auto r = average_ranks(std::vector<double>{10, 20, 20, 5, 20});
  EXPECT_EQ(r, (std::vector<double>{2, 4, 4, 1, 4}));
}

TEST(Wilcoxon, AllPositiveSix)
{
  const std::vector<double> a{2, 3, 4, 5, 6, 7}, b{1, 1, 1, 1, 1, 1};
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_EQ(r.n_effective, 6u);
  EXPECT_EQ(r.statistic_W, 0.0);
  EXPECT_EQ(r.w_plus, 21.0);
  EXPECT_EQ(r.method, PValueMethod::ExactEnumeration);
  EXPECT_EQ(r.p_value, 0.03125);
  EXPECT_EQ(r.p_value, brute_force_p({1, 2, 3, 4, 5, 6}, 0.0));
}

TEST(Wilcoxon, Degenerate)
{
  const std::vector<double> a{1, 2, 3};
  const auto r = wilcoxon_signed_rank(a, a);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.n_effective, 0u);
  EXPECT_THROW(wilcoxon_signed_rank(a, std::vector<double>{1, 2}), std::invalid_argument);
  EXPECT_THROW(wilcoxon_signed_rank(std::vector<double>{std::nan("")}, std::vector<double>{1}),
               std::invalid_argument);
}

TEST(Wilcoxon, ExactMatchesBruteForceWithTiesAndZeros)
{
  RandomSource rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(14);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse values so ties and zero differences both occur.
      a[i] = static_cast<double>(rng.index(7));
      b[i] = static_cast<double>(rng.index(7));
    }
    const auto r = wilcoxon_signed_rank(a, b, PValueMethod::ExactEnumeration);
    const auto ranks = abs_ranks(a, b);
    ASSERT_EQ(r.n_effective, ranks.size());
    if (ranks.empty())
      continue;
    ASSERT_NEAR(r.p_value, brute_force_p(ranks, r.statistic_W), 1e-12) << "trial " << trial;
    ASSERT_DOUBLE_EQ(r.w_plus + r.w_minus, static_cast<double>(ranks.size() * (ranks.size() + 1)) / 2);
  }
}

TEST(Wilcoxon, ExactVersusNormalAtFifteen)
{
  RandomSource rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a(15), b(15);
    for (std::size_t i = 0; i < 15; ++i) {
      a[i] = rng.uniform();
      b[i] = rng.uniform();
    }
    const auto exact = wilcoxon_signed_rank(a, b, PValueMethod::ExactEnumeration);
    const auto normal = wilcoxon_signed_rank(a, b, PValueMethod::NormalApproximation);
    EXPECT_EQ(exact.method, PValueMethod::ExactEnumeration);
    EXPECT_EQ(normal.method, PValueMethod::NormalApproximation);
    EXPECT_NEAR(exact.p_value, normal.p_value, 0.02) << "trial " << trial;
  }
}

TEST(Wilcoxon, MethodSelection)
{
  RandomSource rng(1);
  std::vector<double> a(40), b(40);
  for (std::size_t i = 0; i < 40; ++i) {
    a[i] = rng.uniform();
    b[i] = rng.uniform();
  }
  EXPECT_EQ(wilcoxon_signed_rank(std::span(a).first(25), std::span(b).first(25)).method,
            PValueMethod::ExactEnumeration);
  EXPECT_EQ(wilcoxon_signed_rank(a, b).method, PValueMethod::NormalApproximation);
}

TEST(Wilcoxon, InvariantUnderShiftScaleAndSwap)
{
  RandomSource rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng.index(30);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform(-3, 3);
      b[i] = rng.uniform(-3, 3);
    }
    const auto base = wilcoxon_signed_rank(a, b);

    auto as = a, bs = b;
    for (std::size_t i = 0; i < n; ++i) {
      as[i] += 0.25;
      bs[i] += 0.25;
    }
    // The shift is exact in binary, so differences are unchanged.
    const auto shifted = wilcoxon_signed_rank(as, bs);
    EXPECT_EQ(shifted.statistic_W, base.statistic_W);
    EXPECT_EQ(shifted.p_value, base.p_value);

    auto ak = a;
    for (std::size_t i = 0; i < n; ++i)
      ak[i] = b[i] + 8.0 * (a[i] - b[i]);
    const auto scaled = wilcoxon_signed_rank(ak, b);
    EXPECT_EQ(scaled.statistic_W, base.statistic_W);
    EXPECT_NEAR(scaled.p_value, base.p_value, 1e-15);

    const auto swapped = wilcoxon_signed_rank(b, a);
    EXPECT_EQ(swapped.w_plus, base.w_minus);
    EXPECT_EQ(swapped.p_value, base.p_value);

    ASSERT_GE(base.p_value, 0.0);
    ASSERT_LE(base.p_value, 1.0);
  }
}

TEST(Wilcoxon, ExactFunctionsDirect)
{
  const std::vector<double> ranks{1, 2, 3, 4, 5, 6, 7, 8};
  for (double w = 0; w <= 18; w += 1)
    EXPECT_NEAR(exact_signed_rank_p(ranks, w), brute_force_p(ranks, w), 1e-15) << w;
  EXPECT_GT(normal_signed_rank_p(ranks, 18.0), 0.9);
  EXPECT_LE(normal_signed_rank_p(ranks, 18.0), 1.0);
}
