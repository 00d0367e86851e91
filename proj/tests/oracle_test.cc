#include "treebayes/oracle.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "treebayes/errors.h"
#include "treebayes/induction.h"
#include "treebayes/synth.h"

namespace treebayes {
namespace {

std::vector<Example> replicate(const AttributeValues& type, NodeCounts c) {
  std::vector<Example> out;
  for (std::int64_t i = 0; i < c.pos; ++i) out.push_back({type, Label::kPositive});
  for (std::int64_t i = 0; i < c.neg; ++i) out.push_back({type, Label::kNegative});
  return out;
}

TEST(ExhaustiveBestRule, TwoObservedTypes) {
  std::vector<Example> ex = replicate({0, 0}, {3, 1});
  const auto more = replicate({0, 1}, {0, 2});
  ex.insert(ex.end(), more.begin(), more.end());
  const BestRule r = exhaustive_best_rule(count_types(ex));
  EXPECT_EQ(r.errors, 1);
  ASSERT_EQ(r.decisions.size(), 4u);
  EXPECT_EQ(r.decisions.at({0, 0}), Label::kPositive);
  EXPECT_EQ(r.decisions.at({0, 1}), Label::kNegative);
  // Unseen types take the first label in order.
  EXPECT_EQ(r.decisions.at({1, 0}), Label::kPositive);
  EXPECT_EQ(r.decisions.at({1, 1}), Label::kPositive);
}

TEST(ExhaustiveBestRule, PureAndBalancedData) {
  const BestRule pure =
      exhaustive_best_rule(count_types(gen_parity({.bits = 3}).examples));
  EXPECT_EQ(pure.errors, 0);
  EXPECT_EQ(pure.decisions.at({1, 0, 0}), Label::kPositive);
  EXPECT_EQ(pure.decisions.at({1, 1, 0}), Label::kNegative);

  std::vector<Example> balanced = replicate({0}, {2, 2});
  const auto more = replicate({1}, {3, 3});
  balanced.insert(balanced.end(), more.begin(), more.end());
  const BestRule r = exhaustive_best_rule(count_types(balanced));
  EXPECT_EQ(r.errors, 5);
  EXPECT_EQ(r.decisions.at({0}), Label::kPositive);
  EXPECT_EQ(r.decisions.at({1}), Label::kPositive);
}

TEST(ExhaustiveBestRule, MinimumIsSumOfMinorityCounts) {
  testing::Rng rng(89);
  for (int trial = 0; trial < 200; ++trial) {
    const int attrs = static_cast<int>(testing::uniform_int(rng, 1, 3));
    const TypeCounts c = count_types(
        testing::random_examples(rng, attrs, testing::uniform_int(rng, 1, 50), 0.6));
    std::int64_t sum_min = 0;
    for (const TypeCounts::Entry& e : c.entries()) {
      sum_min += std::min(e.counts.pos, e.counts.neg);
    }
    const BestRule r = exhaustive_best_rule(c);
    EXPECT_EQ(r.errors, sum_min);
    EXPECT_EQ(r.decisions.size(), std::size_t{1} << attrs);
    // The reported errors are those of the reported decisions.
    std::int64_t recount = 0;
    for (const TypeCounts::Entry& e : c.entries()) {
      recount += r.decisions.at(e.type) == Label::kPositive ? e.counts.neg
                                                            : e.counts.pos;
    }
    EXPECT_EQ(recount, r.errors);
    EXPECT_EQ(grow(c, {}, {}).training_errors(), r.errors);
  }
}

TEST(ExhaustiveBestRule, RejectsMoreThanThreeAttributes) {
  const TypeCounts c = count_types(gen_parity({.bits = 4}).examples);
  EXPECT_THROW(exhaustive_best_rule(c), UsageError);
}

TEST(BetaPosteriorMean, ClosedForms) {
  EXPECT_NEAR(beta_posterior_mean(90, 60, 1.0, 1.0), 91.0 / 152.0, 1e-12);
  EXPECT_EQ(beta_posterior_mean(0, 0, 1.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(beta_posterior_mean(3, 1, 0.0, 0.0), 0.75);
  EXPECT_NEAR(beta_posterior_mean(3, 1, 1e-12, 1e-12), 0.75, 1e-12);
  EXPECT_THROW(beta_posterior_mean(0, 0, 0.0, 0.0), UsageError);
  EXPECT_THROW(beta_posterior_mean(-1, 2, 1.0, 1.0), UsageError);
  EXPECT_THROW(beta_posterior_mean(1, 2, -1.0, 1.0), UsageError);
}

TEST(BetaPosteriorMean, MatchesNumericalIntegration) {
  // Midpoint rule on 10^6 cells of phi * phi^p (1 - phi)^n, in log space.
  const std::int64_t p = 90, n = 60;
  const int cells = 1000000;
  const double log_peak = p * std::log(0.6) + n * std::log(0.4);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double phi = (i + 0.5) / cells;
    const double f = std::exp(p * std::log(phi) + n * std::log1p(-phi) - log_peak);
    num += phi * f;
    den += f;
  }
  EXPECT_NEAR(beta_posterior_mean(p, n, 1.0, 1.0), num / den, 1e-6);
}

TEST(BetaPosteriorMean, MonotoneInCounts) {
  testing::Rng rng(97);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t p = testing::uniform_int(rng, 0, 100);
    const std::int64_t n = testing::uniform_int(rng, 0, 100);
    const double a = testing::uniform_real(rng, 0.1, 5.0);
    const double b = testing::uniform_real(rng, 0.1, 5.0);
    const double base = beta_posterior_mean(p, n, a, b);
    EXPECT_GT(beta_posterior_mean(p + 1, n, a, b), base);
    EXPECT_LT(beta_posterior_mean(p, n + 1, a, b), base);
    EXPECT_GT(base, 0.0);
    EXPECT_LT(base, 1.0);
  }
}

}  // namespace
}  // namespace treebayes
