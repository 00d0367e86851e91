#ifndef TREEBAYES_TREE_H_
#define TREEBAYES_TREE_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "treebayes/dataset.h"

namespace treebayes {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// A node is either a test on a binary attribute (yes = value 1, no = value 0)
// or a leaf carrying a positive-class proportion and a decision.
struct TreeNode {
  NodeCounts counts;
  int attribute = -1;  // -1 for leaves
  NodeId yes = kNoNode;
  NodeId no = kNoNode;
  double phi_hat = 0.0;  // leaves only
  Label label = Label::kNegative;  // leaves only

  bool is_leaf() const { return attribute < 0; }
};

// Binary decision tree stored as a flat node array; node 0 is the root once
// anything has been added. Copyable value type.
class DecisionTree {
 public:
  DecisionTree() = default;

  static DecisionTree single_leaf(NodeCounts counts, double phi_hat,
                                  Label label);

  NodeId add_leaf(NodeCounts counts, double phi_hat, Label label);
  // Children are attached later with set_children.
  NodeId add_test(int attribute, NodeCounts counts);
  void set_children(NodeId test, NodeId yes, NodeId no);
  void relabel_leaf(NodeId leaf, double phi_hat, Label label);

  bool empty() const { return nodes_.empty(); }
  NodeId root() const { return 0; }
  const TreeNode& node(NodeId id) const {
    return nodes_[static_cast<std::size_t>(id)];
  }
  std::span<const TreeNode> nodes() const { return nodes_; }

  int leaf_count() const;
  int internal_count() const;
  // Number of tests on the longest root-to-leaf path.
  int depth() const;

  // Leaf reached by `values`. Throws UsageError if the tree is empty or the
  // vector is too short for an attribute tested on the way.
  NodeId route(std::span<const std::uint8_t> values) const;

  // Misclassified training examples implied by the leaf counts.
  std::int64_t training_errors() const;

  // Throws InvariantError unless every test has two children whose counts
  // sum to its own and no attribute repeats along a path.
  void check_consistency() const;

  // Structural equality from the root: same tests, same counts, same leaf
  // labels and proportions. Node numbering is irrelevant.
  bool operator==(const DecisionTree& other) const;

 private:
  std::vector<TreeNode> nodes_;
};

}  // namespace treebayes

#endif  // TREEBAYES_TREE_H_
