#ifndef TREEBAYES_SCORING_H_
#define TREEBAYES_SCORING_H_

#include <map>

#include "treebayes/dataset.h"
#include "treebayes/tree.h"

namespace treebayes {

// Complexity prior. log Prior(tree) = -alpha * (number of tests) + const, so
// alpha is the price in nats of one more test. smoothing_a is a symmetric
// pseudocount added to both classes when estimating leaf proportions.
struct PriorConfig {
  double alpha = 0.0;
  double smoothing_a = 0.0;

  // Throws UsageError if either parameter is negative or not finite
  // (alpha may be +infinity).
  void validate() const;
};

// Log posterior of a tree's best underlying rule, up to a rule-independent
// constant. Everything is in nats.
struct RuleScore {
  double log_likelihood = 0.0;
  double complexity_penalty = 0.0;
  double total = 0.0;
};

struct LeafEstimate {
  double phi_hat = 0.0;
  double log_likelihood = 0.0;
};

// pos * ln(phi) + neg * ln(1 - phi) with 0 * ln 0 = 0. Returns -infinity
// when a nonzero count meets ln 0. Throws UsageError for phi outside [0,1].
double leaf_log_likelihood(const NodeCounts& c, double phi);

// Smoothed proportion (pos + a) / (total + 2a) and the log-likelihood there.
// With a = 0 this is the maximum-likelihood leaf. A node without examples
// has log-likelihood 0 at any proportion; its phi_hat is 0.5 when a > 0.
// Throws UsageError when the node is empty and a = 0.
LeafEstimate max_leaf_log_likelihood(const NodeCounts& c, double smoothing_a);

// Positive iff the leaf estimate is at least 0.5.
Label decide_leaf(const NodeCounts& c, double smoothing_a);

// Sum of leaf log-likelihoods minus alpha per test. Leaves without
// examples contribute 0. Throws InvariantError on inconsistent counts.
RuleScore tree_score(const DecisionTree& tree, const PriorConfig& prior);

// Probability of error of `decisions` when types occur with proportions
// `lambda` and are positive with proportions `phi`. Types absent from
// `lambda` have weight 0. Throws UsageError if lambda does not sum to 1
// (within 1e-9) or a weighted type lacks a decision or a phi.
double expected_error_cost(const std::map<AttributeValues, Label>& decisions,
                           const std::map<AttributeValues, double>& lambda,
                           const std::map<AttributeValues, double>& phi);

// Empirical proportions (lambda_hat, phi_hat) of the observed types.
struct EmpiricalProportions {
  std::map<AttributeValues, double> lambda;
  std::map<AttributeValues, double> phi;
};
EmpiricalProportions empirical_proportions(const TypeCounts& counts);

}  // namespace treebayes

#endif  // TREEBAYES_SCORING_H_
