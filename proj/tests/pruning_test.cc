#include "treebayes/pruning.h"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "treebayes/errors.h"
#include "treebayes/induction.h"
#include "treebayes/synth.h"

namespace treebayes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DecisionTree stump(NodeCounts yes, NodeCounts no) {
  DecisionTree t;
  const NodeId root = t.add_test(0, yes + no);
  const NodeId y = t.add_leaf(yes, 0.0, decide_leaf(yes, 0.0));
  const NodeId n = t.add_leaf(no, 0.0, decide_leaf(no, 0.0));
  t.set_children(root, y, n);
  return t;
}

// Full tree of depth 2 over attributes 0 (root) and 1.
DecisionTree depth_two(NodeCounts a, NodeCounts b, NodeCounts c, NodeCounts d) {
  DecisionTree t;
  const NodeId root = t.add_test(0, a + b + c + d);
  const NodeId left = t.add_test(1, a + b);
  const NodeId la = t.add_leaf(a, 0.0, decide_leaf(a, 0.0));
  const NodeId lb = t.add_leaf(b, 0.0, decide_leaf(b, 0.0));
  t.set_children(left, la, lb);
  const NodeId right = t.add_test(1, c + d);
  const NodeId lc = t.add_leaf(c, 0.0, decide_leaf(c, 0.0));
  const NodeId ld = t.add_leaf(d, 0.0, decide_leaf(d, 0.0));
  t.set_children(right, lc, ld);
  t.set_children(root, left, right);
  return t;
}

// True if every node of `pruned` appears, at the same position, in `full`.
bool is_pruning_of(const DecisionTree& pruned, NodeId p,
                   const DecisionTree& full, NodeId f) {
  const TreeNode& a = pruned.node(p);
  const TreeNode& b = full.node(f);
  if (a.counts != b.counts) return false;
  if (a.is_leaf()) return true;
  return a.attribute == b.attribute && is_pruning_of(pruned, a.yes, full, b.yes) &&
         is_pruning_of(pruned, a.no, full, b.no);
}

TEST(PruneOptimal, LoneNegativeScenario) {
  // Seven positives and one negative isolated by a single test.
  const DecisionTree t = stump({7, 0}, {0, 1});
  // The split scores -alpha; the collapsed leaf 7 ln(7/8) + ln(1/8).
  const double leaf_ll = 7 * std::log(7.0 / 8.0) + std::log(1.0 / 8.0);
  EXPECT_NEAR(leaf_ll, -3.014161290051494, 1e-12);

  const PruneResult at3 = prune_optimal(t, {3.0, 0.0});
  EXPECT_EQ(at3.tree.leaf_count(), 2);
  EXPECT_EQ(at3.pruned_node_count, 0);
  EXPECT_DOUBLE_EQ(at3.score.total, -3.0);

  const PruneResult at31 = prune_optimal(t, {3.1, 0.0});
  ASSERT_EQ(at31.tree.leaf_count(), 1);
  EXPECT_EQ(at31.tree.node(0).label, Label::kPositive);
  EXPECT_EQ(at31.tree.training_errors(), 1);
  EXPECT_EQ(at31.pruned_node_count, 1);
  EXPECT_NEAR(at31.score.total, leaf_ll, 1e-12);
}

TEST(PruneOptimal, AlphaZeroKeepsTheFit) {
  testing::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const DecisionTree t = testing::random_tree(rng, 6, 10);
    const PruneResult r = prune_optimal(t, {0.0, 0.0});
    const RuleScore before = tree_score(t, {0.0, 0.0});
    EXPECT_NEAR(r.score.total, before.total, 1e-9);
    EXPECT_EQ(r.tree.training_errors(), t.training_errors());
  }
}

TEST(PruneOptimal, AlphaInfinityGivesMajorityLeaf) {
  const DecisionTree t = depth_two({3, 0}, {0, 2}, {1, 1}, {0, 2});
  const PruneResult r = prune_optimal(t, {kInf, 0.0});
  ASSERT_EQ(r.tree.leaf_count(), 1);
  EXPECT_EQ(r.tree.node(0).counts, (NodeCounts{4, 5}));
  EXPECT_EQ(r.tree.node(0).label, Label::kNegative);
  EXPECT_EQ(r.pruned_node_count, 3);

  // Ties go positive.
  const PruneResult tie = prune_optimal(stump({2, 0}, {0, 2}), {kInf, 0.0});
  EXPECT_EQ(tie.tree.node(0).label, Label::kPositive);
}

TEST(PruneOptimal, TiesCollapse) {
  // Both children have proportion 1/2: splitting buys no likelihood.
  const PruneResult r = prune_optimal(stump({1, 1}, {2, 2}), {0.0, 0.0});
  EXPECT_EQ(r.tree.leaf_count(), 1);
}

TEST(PruneOptimal, SplitWithEmptyBranchCollapses) {
  DecisionTree t;
  const NodeId root = t.add_test(0, {3, 1});
  const NodeId y = t.add_leaf({3, 1}, 0.75, Label::kPositive);
  const NodeId n = t.add_leaf({0, 0}, 0.75, Label::kPositive);
  t.set_children(root, y, n);
  // The split adds no likelihood, so any alpha >= 0 collapses it.
  const PruneResult r = prune_optimal(t, {0.0, 0.0});
  ASSERT_EQ(r.tree.leaf_count(), 1);
  EXPECT_DOUBLE_EQ(r.tree.node(0).phi_hat, 0.75);
}

TEST(PruneOptimal, RejectsInconsistentCounts) {
  DecisionTree t;
  const NodeId root = t.add_test(0, {9, 9});
  const NodeId y = t.add_leaf({1, 0}, 1.0, Label::kPositive);
  const NodeId n = t.add_leaf({0, 1}, 0.0, Label::kNegative);
  t.set_children(root, y, n);
  EXPECT_THROW(prune_optimal(t, {}), InvariantError);
}

TEST(PruneOptimal, MatchesEnumeration) {
  testing::Rng rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionTree t = testing::random_tree(rng, 8, 12);
    const PriorConfig prior{testing::uniform_real(rng, 0.0, 5.0),
                            trial % 2 ? 0.0 : testing::uniform_real(rng, 0.0, 2.0)};
    const PruneResult r = prune_optimal(t, prior);
    const EnumerationResult e = enumerate_prunings(t, prior);
    EXPECT_NEAR(r.score.total, e.best_total, 1e-9);
    EXPECT_NEAR(tree_score(r.tree, prior).total, r.score.total, 1e-9);

    // Postconditions: an ancestor-closed pruning that beats both extremes.
    EXPECT_TRUE(is_pruning_of(r.tree, r.tree.root(), t, t.root()));
    EXPECT_NO_THROW(r.tree.check_consistency());
    EXPECT_GE(r.score.total, tree_score(t, prior).total - 1e-9);
    const DecisionTree leaf =
        collapse_to(t, std::vector<bool>(t.nodes().size(), false), prior);
    EXPECT_GE(r.score.total, tree_score(leaf, prior).total - 1e-9);
    EXPECT_EQ(r.pruned_node_count, t.internal_count() - r.tree.internal_count());
    EXPECT_GE(r.tree.training_errors(), t.training_errors());
  }
}

TEST(PruneOptimal, LeafCountNonIncreasingInAlpha) {
  testing::Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const TypeCounts c = count_types(testing::random_examples(rng, 6, 80, 0.8));
    const DecisionTree grown = grow(c, {}, {});
    int previous = grown.leaf_count();
    for (double alpha = 0.0; alpha <= 12.0; alpha += 0.25) {
      const int leaves = prune_optimal(grown, {alpha, 0.0}).tree.leaf_count();
      EXPECT_LE(leaves, previous) << "alpha " << alpha;
      previous = leaves;
    }
  }
}

TEST(EnumeratePrunings, Counts) {
  const DecisionTree leaf = DecisionTree::single_leaf({1, 1}, 0.5, Label::kPositive);
  EXPECT_EQ(enumerate_prunings(leaf, {}).prunings, 1);
  EXPECT_EQ(enumerate_prunings(stump({1, 0}, {0, 1}), {}).prunings, 2);
  EXPECT_EQ(
      enumerate_prunings(depth_two({1, 0}, {0, 1}, {1, 0}, {0, 1}), {}).prunings,
      5);
}

TEST(EnumeratePrunings, CountFollowsRecurrence) {
  // c(leaf) = 1, c(test) = 1 + c(yes) * c(no).
  std::function<std::int64_t(const DecisionTree&, NodeId)> count =
      [&](const DecisionTree& t, NodeId id) -> std::int64_t {
    const TreeNode& n = t.node(id);
    return n.is_leaf() ? 1 : 1 + count(t, n.yes) * count(t, n.no);
  };
  testing::Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const DecisionTree t = testing::random_tree(rng, 8, 10);
    EXPECT_EQ(enumerate_prunings(t, {}).prunings, count(t, t.root()));
  }
}

TEST(EnumeratePrunings, SizeLimit) {
  const DecisionTree t = grow(count_types(gen_parity({.bits = 5}).examples), {}, {});
  ASSERT_GT(t.internal_count(), kMaxEnumerationTests);
  EXPECT_THROW(enumerate_prunings(t, {}), UsageError);
}

TEST(CollapseTo, KeepsOnlyMarkedTests) {
  const DecisionTree t = depth_two({3, 0}, {0, 2}, {1, 1}, {0, 2});
  std::vector<bool> kept(t.nodes().size(), false);
  kept[0] = true;
  kept[1] = true;
  const DecisionTree c = collapse_to(t, kept, {});
  EXPECT_EQ(c.internal_count(), 2);
  EXPECT_EQ(c.leaf_count(), 3);
  EXPECT_EQ(c.training_errors(), 1);
}

TEST(SensitivitySweep, RowsFollowTheGrid) {
  const TypeCounts train = count_types(gen_parity({.bits = 4}).examples);
  const DecisionTree grown = grow(train, {}, {});
  const std::vector<double> grid = {0.0, 0.5, 0.5, 1e6};
  const auto rows = sensitivity_sweep(grown, grid, train);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].leaves, grown.leaf_count());
  EXPECT_EQ(rows[0].train_errors, 0);
  EXPECT_EQ(rows[0].holdout_errors, 0);
  EXPECT_EQ(rows[3].leaves, 1);
  EXPECT_EQ(rows[3].train_errors, 8);
  EXPECT_DOUBLE_EQ(rows[3].train_error_rate, 0.5);
  EXPECT_DOUBLE_EQ(rows[3].holdout_error_rate, 0.5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].leaves, rows[i - 1].leaves);
    EXPECT_EQ(rows[i].alpha, grid[i]);
  }
}

TEST(SensitivitySweep, GridPreconditions) {
  const TypeCounts train = count_types(gen_parity({.bits = 2}).examples);
  const DecisionTree grown = grow(train, {}, {});
  EXPECT_THROW(sensitivity_sweep(grown, std::vector<double>{}, train), UsageError);
  EXPECT_THROW(sensitivity_sweep(grown, std::vector<double>{2.0, 1.0}, train),
               UsageError);
  EXPECT_THROW(sensitivity_sweep(grown, std::vector<double>{-1.0}, train),
               UsageError);
}

TEST(CountErrors, UsesTheTreeDecisions) {
  const DecisionTree t = stump({5, 0}, {0, 5});
  const std::vector<Example> ex = {{{1}, Label::kPositive},
                                   {{1}, Label::kNegative},
                                   {{0}, Label::kPositive},
                                   {{0}, Label::kNegative}};
  EXPECT_EQ(count_errors(t, count_types(ex)), 2);
}

}  // namespace
}  // namespace treebayes
