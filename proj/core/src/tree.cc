#include "treebayes/tree.h"

#include <algorithm>
#include <string>

#include "treebayes/errors.h"

namespace treebayes {

DecisionTree DecisionTree::single_leaf(NodeCounts counts, double phi_hat,
                                       Label label) {
  DecisionTree tree;
  tree.add_leaf(counts, phi_hat, label);
  return tree;
}

NodeId DecisionTree::add_leaf(NodeCounts counts, double phi_hat, Label label) {
  TreeNode n;
  n.counts = counts;
  n.phi_hat = phi_hat;
  n.label = label;
  nodes_.push_back(n);
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId DecisionTree::add_test(int attribute, NodeCounts counts) {
  if (attribute < 0) throw UsageError("test attribute must be nonnegative");
  TreeNode n;
  n.counts = counts;
  n.attribute = attribute;
  nodes_.push_back(n);
  return static_cast<NodeId>(nodes_.size() - 1);
}

void DecisionTree::set_children(NodeId test, NodeId yes, NodeId no) {
  const auto size = static_cast<NodeId>(nodes_.size());
  if (test < 0 || test >= size || yes < 0 || yes >= size || no < 0 ||
      no >= size) {
    throw UsageError("node id out of range");
  }
  TreeNode& n = nodes_[static_cast<std::size_t>(test)];
  if (n.is_leaf()) throw UsageError("cannot attach children to a leaf");
  n.yes = yes;
  n.no = no;
}

void DecisionTree::relabel_leaf(NodeId leaf, double phi_hat, Label label) {
  if (leaf < 0 || leaf >= static_cast<NodeId>(nodes_.size())) {
    throw UsageError("node id out of range");
  }
  TreeNode& n = nodes_[static_cast<std::size_t>(leaf)];
  if (!n.is_leaf()) throw UsageError("cannot relabel a test node");
  n.phi_hat = phi_hat;
  n.label = label;
}

int DecisionTree::leaf_count() const {
  return static_cast<int>(std::count_if(
      nodes_.begin(), nodes_.end(),
      [](const TreeNode& n) { return n.is_leaf(); }));
}

int DecisionTree::internal_count() const {
  return static_cast<int>(nodes_.size()) - leaf_count();
}

int DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  int best = 0;
  std::vector<std::pair<NodeId, int>> stack{{root(), 0}};
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    const TreeNode& n = node(id);
    if (n.is_leaf()) {
      best = std::max(best, d);
    } else {
      stack.push_back({n.yes, d + 1});
      stack.push_back({n.no, d + 1});
    }
  }
  return best;
}

NodeId DecisionTree::route(std::span<const std::uint8_t> values) const {
  if (nodes_.empty()) throw UsageError("cannot route through an empty tree");
  NodeId id = root();
  while (!node(id).is_leaf()) {
    const TreeNode& n = node(id);
    if (static_cast<std::size_t>(n.attribute) >= values.size()) {
      throw UsageError("value vector of length " +
                       std::to_string(values.size()) +
                       " is too short for attribute " +
                       std::to_string(n.attribute));
    }
    id = values[static_cast<std::size_t>(n.attribute)] ? n.yes : n.no;
  }
  return id;
}

std::int64_t DecisionTree::training_errors() const {
  std::int64_t errors = 0;
  for (const TreeNode& n : nodes_) {
    if (!n.is_leaf()) continue;
    errors += n.label == Label::kPositive ? n.counts.neg : n.counts.pos;
  }
  return errors;
}

void DecisionTree::check_consistency() const {
  if (nodes_.empty()) throw InvariantError("tree is empty");
  std::vector<int> visits(nodes_.size(), 0);
  // (node, attributes tested above it)
  std::vector<std::pair<NodeId, std::vector<int>>> stack{{root(), {}}};
  while (!stack.empty()) {
    auto [id, tested] = std::move(stack.back());
    stack.pop_back();
    if (++visits[static_cast<std::size_t>(id)] > 1) {
      throw InvariantError("node " + std::to_string(id) +
                           " is reachable twice");
    }
    const TreeNode& n = node(id);
    if (n.counts.pos < 0 || n.counts.neg < 0) {
      throw InvariantError("negative counts at node " + std::to_string(id));
    }
    if (n.is_leaf()) continue;
    if (n.yes == kNoNode || n.no == kNoNode) {
      throw InvariantError("test node " + std::to_string(id) +
                           " is missing a child");
    }
    if (std::find(tested.begin(), tested.end(), n.attribute) != tested.end()) {
      throw InvariantError("attribute " + std::to_string(n.attribute) +
                           " tested twice on one path");
    }
    if (node(n.yes).counts + node(n.no).counts != n.counts) {
      throw InvariantError("child counts do not sum to parent counts at node " +
                           std::to_string(id));
    }
    tested.push_back(n.attribute);
    stack.push_back({n.yes, tested});
    stack.push_back({n.no, std::move(tested)});
  }
}

bool DecisionTree::operator==(const DecisionTree& other) const {
  if (nodes_.empty() || other.nodes_.empty()) {
    return nodes_.empty() && other.nodes_.empty();
  }
  std::vector<std::pair<NodeId, NodeId>> stack{{root(), other.root()}};
  while (!stack.empty()) {
    const auto [a_id, b_id] = stack.back();
    stack.pop_back();
    const TreeNode& a = node(a_id);
    const TreeNode& b = other.node(b_id);
    if (a.attribute != b.attribute || a.counts != b.counts) return false;
    if (a.is_leaf()) {
      if (a.label != b.label || a.phi_hat != b.phi_hat) return false;
      continue;
    }
    stack.push_back({a.yes, b.yes});
    stack.push_back({a.no, b.no});
  }
  return true;
}

}  // namespace treebayes
