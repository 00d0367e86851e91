#ifndef TREEBAYES_INDUCTION_H_
#define TREEBAYES_INDUCTION_H_

#include <functional>
#include <optional>
#include <span>

#include "treebayes/dataset.h"
#include "treebayes/scoring.h"
#include "treebayes/tree.h"

namespace treebayes {

// Gains closer than this (in bits) are treated as tied.
inline constexpr double kGainTieTolerance = 1e-12;

// Two scores of one candidate split: Quinlan's gain in bits, computed from
// class entropies, and the maximized log-likelihood of the two new leaves
// in nats. For a fixed parent they order attributes identically:
//   gain_bits = (max_ll - max_ll(parent)) / (ln 2 * parent.total()).
struct SplitEvaluation {
  int attribute = -1;
  NodeCounts yes;
  NodeCounts no;
  double gain_bits = 0.0;
  double max_ll = 0.0;
};

enum class TieBreak { kLowestIndex, kHighestIndex };

struct GrowConfig {
  // A node with fewer examples than this becomes a leaf.
  std::int64_t min_leaf = 1;
  TieBreak tie_break = TieBreak::kLowestIndex;
  std::optional<int> max_depth;

  void validate() const;
};

// Binary entropy of the class distribution, in bits.
double class_entropy_bits(const NodeCounts& c);

// Scores a split given its two branch counts. Empty branches contribute
// nothing. Throws UsageError if both branches are empty.
SplitEvaluation evaluate_split(int attribute, const NodeCounts& yes,
                               const NodeCounts& no);

// Scores testing `attribute` at the node selected by `path`. Throws
// UsageError if the attribute is already on the path or the node is empty.
SplitEvaluation evaluate_split(const TypeCounts& counts, const Path& path,
                               int attribute);

// Highest-gain candidate, ties (within kGainTieTolerance) resolved by
// config.tie_break. Zero gain is still a valid choice. Returns nullopt only
// for an empty candidate list.
std::optional<int> best_attribute(std::span<const SplitEvaluation> candidates,
                                  const GrowConfig& config);

// Evaluates every attribute not on `path` and returns the best one.
std::optional<int> best_attribute(const TypeCounts& counts, const Path& path,
                                  const GrowConfig& config);

// Picks one attribute among the candidates at a node. The candidate list is
// never empty.
using AttributeChooser =
    std::function<int(std::span<const SplitEvaluation> candidates)>;

// Top-down growth. A node becomes a leaf when it is pure, holds a single
// object type (no remaining attribute separates its examples), has fewer
// than min_leaf examples, or sits at max_depth. Otherwise the chooser picks
// the test among the attributes that separate the node. Leaves get
// phi_hat and label from the prior's smoothing. Throws UsageError on empty
// counts.
DecisionTree grow_with(const TypeCounts& counts, const GrowConfig& config,
                       const PriorConfig& prior,
                       const AttributeChooser& choose);

// Greedy growth: choose = best_attribute by gain. alpha plays no role here.
DecisionTree grow(const TypeCounts& counts, const GrowConfig& config,
                  const PriorConfig& prior);

struct Classification {
  Label label = Label::kNegative;
  double phi_hat = 0.0;
};

// Throws UsageError unless values.size() == num_attributes.
Classification classify(const DecisionTree& tree,
                        std::span<const std::uint8_t> values,
                        int num_attributes);

}  // namespace treebayes

#endif  // TREEBAYES_INDUCTION_H_
