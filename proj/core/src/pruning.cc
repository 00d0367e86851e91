#include "treebayes/pruning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "treebayes/errors.h"
#include "treebayes/induction.h"

namespace treebayes {
namespace {

double leaf_value(const NodeCounts& c, double smoothing_a) {
  if (c.total() == 0) return 0.0;
  return max_leaf_log_likelihood(c, smoothing_a).log_likelihood;
}

// Copies `source` into a fresh tree, turning every test with kept[id] ==
// false into a leaf. Leaves of the source are copied unchanged; a collapsed
// node without examples takes the decision of its nearest nonempty
// ancestor.
class CollapseBuilder {
 public:
  CollapseBuilder(const DecisionTree& source, const std::vector<bool>& kept,
                  double smoothing_a)
      : source_(source), kept_(kept), smoothing_a_(smoothing_a) {}

  DecisionTree run() {
    const TreeNode& root = source_.node(source_.root());
    Classification fallback{Label::kPositive, 0.5};
    if (root.counts.total() > 0 || smoothing_a_ > 0.0) {
      fallback = estimate(root.counts, fallback);
    }
    copy(source_.root(), fallback);
    return std::move(out_);
  }

 private:
  Classification estimate(const NodeCounts& c,
                          const Classification& fallback) const {
    if (c.total() == 0 && smoothing_a_ == 0.0) return fallback;
    return {decide_leaf(c, smoothing_a_),
            max_leaf_log_likelihood(c, smoothing_a_).phi_hat};
  }

  NodeId copy(NodeId id, const Classification& fallback) {
    const TreeNode& n = source_.node(id);
    if (n.is_leaf()) return out_.add_leaf(n.counts, n.phi_hat, n.label);
    const Classification here = estimate(n.counts, fallback);
    if (!kept_[static_cast<std::size_t>(id)]) {
      return out_.add_leaf(n.counts, here.phi_hat, here.label);
    }
    const NodeId test = out_.add_test(n.attribute, n.counts);
    const NodeId yes = copy(n.yes, here);
    const NodeId no = copy(n.no, here);
    out_.set_children(test, yes, no);
    return test;
  }

  const DecisionTree& source_;
  const std::vector<bool>& kept_;
  double smoothing_a_;
  DecisionTree out_;
};

double solve(const DecisionTree& tree, NodeId id, const PriorConfig& prior,
             std::vector<bool>& kept) {
  const TreeNode& n = tree.node(id);
  const double as_leaf = leaf_value(n.counts, prior.smoothing_a);
  if (n.is_leaf()) return as_leaf;
  const double as_test = solve(tree, n.yes, prior, kept) +
                         solve(tree, n.no, prior, kept) - prior.alpha;
  // Equal scores (up to round-off in the sums) go to the smaller tree.
  const double slack =
      1e-12 * std::max(1.0, std::max(std::abs(as_leaf),
                                     std::isfinite(as_test) ? std::abs(as_test)
                                                            : 0.0));
  if (as_leaf >= as_test - slack) return as_leaf;
  kept[static_cast<std::size_t>(id)] = true;
  return as_test;
}

}  // namespace

PruneResult prune_optimal(const DecisionTree& tree, const PriorConfig& prior) {
  prior.validate();
  tree.check_consistency();
  std::vector<bool> kept(tree.nodes().size(), false);
  solve(tree, tree.root(), prior, kept);

  PruneResult result;
  result.tree = CollapseBuilder(tree, kept, prior.smoothing_a).run();
  result.score = tree_score(result.tree, prior);
  result.pruned_node_count =
      tree.internal_count() - result.tree.internal_count();
  return result;
}

DecisionTree collapse_to(const DecisionTree& tree, const std::vector<bool>& kept,
                         const PriorConfig& prior) {
  prior.validate();
  if (kept.size() != tree.nodes().size()) {
    throw UsageError("kept mask has the wrong size");
  }
  return CollapseBuilder(tree, kept, prior.smoothing_a).run();
}

EnumerationResult enumerate_prunings(const DecisionTree& tree,
                                     const PriorConfig& prior) {
  prior.validate();
  tree.check_consistency();

  // Tests in the tree and the position of each test's parent test.
  std::vector<NodeId> tests;
  std::vector<int> parent_slot;
  std::vector<int> slot_of(tree.nodes().size(), -1);
  std::vector<std::pair<NodeId, int>> stack{{tree.root(), -1}};
  while (!stack.empty()) {
    const auto [id, parent] = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    if (n.is_leaf()) continue;
    const int slot = static_cast<int>(tests.size());
    tests.push_back(id);
    parent_slot.push_back(parent);
    slot_of[static_cast<std::size_t>(id)] = slot;
    stack.push_back({n.yes, slot});
    stack.push_back({n.no, slot});
  }
  const int k = static_cast<int>(tests.size());
  if (k > kMaxEnumerationTests) {
    throw UsageError("enumeration limited to " +
                     std::to_string(kMaxEnumerationTests) + " tests, tree has " +
                     std::to_string(k));
  }

  EnumerationResult result;
  result.best_total = -std::numeric_limits<double>::infinity();
  const std::uint32_t masks = 1u << k;
  std::vector<NodeId> frontier;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    bool closed = true;
    for (int s = 0; s < k && closed; ++s) {
      if ((mask >> s & 1u) && parent_slot[static_cast<std::size_t>(s)] >= 0 &&
          !(mask >> parent_slot[static_cast<std::size_t>(s)] & 1u)) {
        closed = false;
      }
    }
    if (!closed) continue;
    ++result.prunings;

    double ll = 0.0;
    int kept_tests = 0;
    frontier.assign(1, tree.root());
    while (!frontier.empty()) {
      const NodeId id = frontier.back();
      frontier.pop_back();
      const TreeNode& n = tree.node(id);
      const int slot = slot_of[static_cast<std::size_t>(id)];
      if (slot >= 0 && (mask >> slot & 1u)) {
        ++kept_tests;
        frontier.push_back(n.yes);
        frontier.push_back(n.no);
      } else {
        ll += leaf_value(n.counts, prior.smoothing_a);
      }
    }
    const double total = ll - (kept_tests == 0 ? 0.0 : prior.alpha * kept_tests);
    result.best_total = std::max(result.best_total, total);
  }
  return result;
}

std::int64_t count_errors(const DecisionTree& tree, const TypeCounts& data) {
  std::int64_t errors = 0;
  for (const TypeCounts::Entry& e : data.entries()) {
    const TreeNode& leaf = tree.node(tree.route(e.type));
    errors += leaf.label == Label::kPositive ? e.counts.neg : e.counts.pos;
  }
  return errors;
}

std::vector<SweepRow> sensitivity_sweep(const DecisionTree& tree,
                                        std::span<const double> alpha_grid,
                                        const TypeCounts& holdout,
                                        const PriorConfig& base) {
  if (alpha_grid.empty()) throw UsageError("alpha grid is empty");
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (alpha_grid[i] < alpha_grid[i - 1]) {
      throw UsageError("alpha grid must be ascending");
    }
  }
  const double train_total =
      static_cast<double>(tree.node(tree.root()).counts.total());
  const double holdout_total = static_cast<double>(holdout.total());

  std::vector<SweepRow> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    PriorConfig prior = base;
    prior.alpha = alpha;
    const PruneResult pruned = prune_optimal(tree, prior);
    SweepRow row;
    row.alpha = alpha;
    row.leaves = pruned.tree.leaf_count();
    row.train_errors = pruned.tree.training_errors();
    row.holdout_errors =
        holdout.total() == 0 ? 0 : count_errors(pruned.tree, holdout);
    row.train_error_rate =
        train_total > 0 ? static_cast<double>(row.train_errors) / train_total
                        : 0.0;
    row.holdout_error_rate =
        holdout_total > 0
            ? static_cast<double>(row.holdout_errors) / holdout_total
            : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace treebayes
