#include "treebayes/induction.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "treebayes/errors.h"

namespace treebayes {
namespace {

double entropy_term(std::int64_t count, std::int64_t total) {
  if (count == 0) return 0.0;
  const double f = static_cast<double>(count) / static_cast<double>(total);
  return -f * std::log2(f);
}

class Grower {
 public:
  Grower(const TypeCounts& counts, const GrowConfig& config,
         const PriorConfig& prior, const AttributeChooser& choose)
      : entries_(counts.entries()),
        num_attributes_(counts.num_attributes()),
        config_(config),
        prior_(prior),
        choose_(choose),
        tested_(static_cast<std::size_t>(num_attributes_), false) {}

  DecisionTree run() {
    std::vector<std::size_t> all(entries_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    build(all, 0);
    return std::move(tree_);
  }

 private:
  NodeCounts sum(const std::vector<std::size_t>& members) const {
    NodeCounts c;
    for (std::size_t i : members) c += entries_[i].counts;
    return c;
  }

  NodeId make_leaf(const NodeCounts& c) {
    const LeafEstimate e = max_leaf_log_likelihood(c, prior_.smoothing_a);
    return tree_.add_leaf(c, e.phi_hat, decide_leaf(c, prior_.smoothing_a));
  }

  NodeId build(const std::vector<std::size_t>& members, int depth) {
    const NodeCounts here = sum(members);
    const bool depth_exhausted =
        config_.max_depth.has_value() && depth >= *config_.max_depth;
    if (here.pure() || members.size() == 1 || here.total() < config_.min_leaf ||
        depth_exhausted) {
      return make_leaf(here);
    }

    std::vector<SplitEvaluation> candidates;
    for (int j = 0; j < num_attributes_; ++j) {
      if (tested_[static_cast<std::size_t>(j)]) continue;
      NodeCounts yes;
      for (std::size_t i : members) {
        if (entries_[i].type[static_cast<std::size_t>(j)]) {
          yes += entries_[i].counts;
        }
      }
      const NodeCounts no{here.pos - yes.pos, here.neg - yes.neg};
      // Attributes constant over the node do not separate anything.
      if (yes.total() == 0 || no.total() == 0) continue;
      candidates.push_back(evaluate_split(j, yes, no));
    }
    // Distinct types always differ on some untested attribute, so this only
    // happens for a single type; kept as a guard.
    if (candidates.empty()) return make_leaf(here);

    const int attribute = choose_(candidates);
    std::vector<std::size_t> yes_members;
    std::vector<std::size_t> no_members;
    for (std::size_t i : members) {
      (entries_[i].type[static_cast<std::size_t>(attribute)] ? yes_members
                                                             : no_members)
          .push_back(i);
    }

    const NodeId id = tree_.add_test(attribute, here);
    tested_[static_cast<std::size_t>(attribute)] = true;
    const NodeId yes_id = build(yes_members, depth + 1);
    const NodeId no_id = build(no_members, depth + 1);
    tested_[static_cast<std::size_t>(attribute)] = false;
    tree_.set_children(id, yes_id, no_id);
    return id;
  }

  std::span<const TypeCounts::Entry> entries_;
  int num_attributes_;
  const GrowConfig& config_;
  const PriorConfig& prior_;
  const AttributeChooser& choose_;
  std::vector<bool> tested_;
  DecisionTree tree_;
};

}  // namespace

void GrowConfig::validate() const {
  if (min_leaf < 1) throw UsageError("min_leaf must be at least 1");
  if (max_depth.has_value() && *max_depth < 0) {
    throw UsageError("max_depth must be nonnegative");
  }
}

double class_entropy_bits(const NodeCounts& c) {
  if (c.total() == 0) return 0.0;
  return entropy_term(c.pos, c.total()) + entropy_term(c.neg, c.total());
}

SplitEvaluation evaluate_split(int attribute, const NodeCounts& yes,
                               const NodeCounts& no) {
  const NodeCounts parent = yes + no;
  if (parent.total() == 0) {
    throw UsageError("cannot evaluate a split of an empty node");
  }
  SplitEvaluation e;
  e.attribute = attribute;
  e.yes = yes;
  e.no = no;

  const double n = static_cast<double>(parent.total());
  const double weighted_child_entropy =
      static_cast<double>(yes.total()) / n * class_entropy_bits(yes) +
      static_cast<double>(no.total()) / n * class_entropy_bits(no);
  e.gain_bits =
      std::max(0.0, class_entropy_bits(parent) - weighted_child_entropy);

  for (const NodeCounts& branch : {yes, no}) {
    if (branch.total() == 0) continue;
    e.max_ll += max_leaf_log_likelihood(branch, 0.0).log_likelihood;
  }
  return e;
}

SplitEvaluation evaluate_split(const TypeCounts& counts, const Path& path,
                               int attribute) {
  const auto [yes, no] = split_counts(counts, path, attribute);
  return evaluate_split(attribute, yes, no);
}

std::optional<int> best_attribute(std::span<const SplitEvaluation> candidates,
                                  const GrowConfig& config) {
  if (candidates.empty()) return std::nullopt;
  double top = candidates.front().gain_bits;
  for (const SplitEvaluation& c : candidates) top = std::max(top, c.gain_bits);
  std::optional<int> chosen;
  for (const SplitEvaluation& c : candidates) {
    if (c.gain_bits < top - kGainTieTolerance) continue;
    if (!chosen.has_value() ||
        (config.tie_break == TieBreak::kLowestIndex ? c.attribute < *chosen
                                                    : c.attribute > *chosen)) {
      chosen = c.attribute;
    }
  }
  return chosen;
}

std::optional<int> best_attribute(const TypeCounts& counts, const Path& path,
                                  const GrowConfig& config) {
  if (counts.counts_at(path).total() == 0) {
    throw UsageError("best_attribute needs a nonempty node");
  }
  std::vector<SplitEvaluation> candidates;
  for (int j = 0; j < counts.num_attributes(); ++j) {
    const bool on_path =
        std::any_of(path.begin(), path.end(),
                    [j](const AttributeTest& t) { return t.attribute == j; });
    if (!on_path) candidates.push_back(evaluate_split(counts, path, j));
  }
  return best_attribute(candidates, config);
}

DecisionTree grow_with(const TypeCounts& counts, const GrowConfig& config,
                       const PriorConfig& prior,
                       const AttributeChooser& choose) {
  config.validate();
  prior.validate();
  if (counts.total() == 0) throw UsageError("cannot grow a tree on no data");
  return Grower(counts, config, prior, choose).run();
}

DecisionTree grow(const TypeCounts& counts, const GrowConfig& config,
                  const PriorConfig& prior) {
  const AttributeChooser greedy =
      [&config](std::span<const SplitEvaluation> candidates) {
        return *best_attribute(candidates, config);
      };
  return grow_with(counts, config, prior, greedy);
}

Classification classify(const DecisionTree& tree,
                        std::span<const std::uint8_t> values,
                        int num_attributes) {
  if (static_cast<int>(values.size()) != num_attributes) {
    throw UsageError("expected " + std::to_string(num_attributes) +
                     " attribute values, got " +
                     std::to_string(values.size()));
  }
  const TreeNode& leaf = tree.node(tree.route(values));
  return {leaf.label, leaf.phi_hat};
}

}  // namespace treebayes
