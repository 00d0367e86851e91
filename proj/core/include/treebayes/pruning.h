#ifndef TREEBAYES_PRUNING_H_
#define TREEBAYES_PRUNING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "treebayes/dataset.h"
#include "treebayes/scoring.h"
#include "treebayes/tree.h"

namespace treebayes {

struct PruneResult {
  DecisionTree tree;
  RuleScore score;
  // Tests of the input tree that were removed.
  int pruned_node_count = 0;
};

// Finds the pruning (ancestor-closed set of kept tests) with the highest
// RuleScore.total by a bottom-up pass:
//   best(node) = max(leaf score of node, best(yes) + best(no) - alpha).
// On equal scores the node is collapsed. Collapsed nodes become leaves with
// the proportion and label of their aggregate counts. Throws InvariantError
// on inconsistent counts.
PruneResult prune_optimal(const DecisionTree& tree, const PriorConfig& prior);

// A tree obtained from `tree` by collapsing every test not in `kept`
// (indexed by NodeId; entries for leaves are ignored). `kept` must be
// ancestor-closed.
DecisionTree collapse_to(const DecisionTree& tree, const std::vector<bool>& kept,
                         const PriorConfig& prior);

inline constexpr int kMaxEnumerationTests = 20;

struct EnumerationResult {
  double best_total = 0.0;
  std::int64_t prunings = 0;
};

// Brute force over every subset of tests, keeping the ancestor-closed ones,
// scoring each pruning directly. Throws UsageError above
// kMaxEnumerationTests tests.
EnumerationResult enumerate_prunings(const DecisionTree& tree,
                                     const PriorConfig& prior);

struct SweepRow {
  double alpha = 0.0;
  int leaves = 0;
  std::int64_t train_errors = 0;
  std::int64_t holdout_errors = 0;
  double train_error_rate = 0.0;
  double holdout_error_rate = 0.0;
};

// Misclassified examples of `data` under `tree`.
std::int64_t count_errors(const DecisionTree& tree, const TypeCounts& data);

// One prune_optimal per alpha. The grid must be nonempty and
// non-decreasing (UsageError otherwise). smoothing_a comes from `base`.
std::vector<SweepRow> sensitivity_sweep(const DecisionTree& tree,
                                        std::span<const double> alpha_grid,
                                        const TypeCounts& holdout,
                                        const PriorConfig& base = {});

}  // namespace treebayes

#endif  // TREEBAYES_PRUNING_H_
