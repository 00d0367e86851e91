#include "treebayes/scoring.h"

#include <cmath>
#include <limits>
#include <string>

#include "treebayes/errors.h"

namespace treebayes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// count * ln(x) with 0 * ln(anything) = 0.
double xlogy(std::int64_t count, double x) {
  if (count == 0) return 0.0;
  if (x <= 0.0) return -kInf;
  return static_cast<double>(count) * std::log(x);
}

}  // namespace

void PriorConfig::validate() const {
  if (!(alpha >= 0.0) || std::isnan(alpha)) {
    throw UsageError("alpha must be nonnegative, got " + std::to_string(alpha));
  }
  if (!(smoothing_a >= 0.0) || !std::isfinite(smoothing_a)) {
    throw UsageError("smoothing must be finite and nonnegative, got " +
                     std::to_string(smoothing_a));
  }
}

double leaf_log_likelihood(const NodeCounts& c, double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw UsageError("proportion " + std::to_string(phi) +
                     " outside [0, 1]");
  }
  return xlogy(c.pos, phi) + xlogy(c.neg, 1.0 - phi);
}

LeafEstimate max_leaf_log_likelihood(const NodeCounts& c, double smoothing_a) {
  if (smoothing_a < 0.0) throw UsageError("smoothing must be nonnegative");
  const double total = static_cast<double>(c.total());
  if (c.total() == 0) {
    if (smoothing_a == 0.0) {
      throw UsageError("leaf proportion undefined without examples or "
                       "smoothing");
    }
    return {0.5, 0.0};
  }
  LeafEstimate e;
  if (smoothing_a == 0.0) {
    // Exact ML: use the two empirical fractions directly so that
    // pos*ln(pos/total) + neg*ln(neg/total) has no 1 - phi round-off.
    e.phi_hat = static_cast<double>(c.pos) / total;
    e.log_likelihood = xlogy(c.pos, static_cast<double>(c.pos) / total) +
                       xlogy(c.neg, static_cast<double>(c.neg) / total);
    return e;
  }
  e.phi_hat = (static_cast<double>(c.pos) + smoothing_a) /
              (total + 2.0 * smoothing_a);
  e.log_likelihood = leaf_log_likelihood(c, e.phi_hat);
  return e;
}

Label decide_leaf(const NodeCounts& c, double smoothing_a) {
  if (smoothing_a == 0.0) {
    if (c.total() == 0) {
      throw UsageError("cannot decide a leaf without examples or smoothing");
    }
    // pos / total >= 1/2 without rounding.
    return 2 * c.pos >= c.total() ? Label::kPositive : Label::kNegative;
  }
  return max_leaf_log_likelihood(c, smoothing_a).phi_hat >= 0.5
             ? Label::kPositive
             : Label::kNegative;
}

RuleScore tree_score(const DecisionTree& tree, const PriorConfig& prior) {
  prior.validate();
  tree.check_consistency();
  RuleScore s;
  int tests = 0;
  for (const TreeNode& n : tree.nodes()) {
    if (!n.is_leaf()) {
      ++tests;
      continue;
    }
    if (n.counts.total() == 0) continue;
    s.log_likelihood += max_leaf_log_likelihood(n.counts, prior.smoothing_a)
                            .log_likelihood;
  }
  s.complexity_penalty = tests == 0 ? 0.0 : prior.alpha * tests;
  s.total = s.log_likelihood - s.complexity_penalty;
  return s;
}

double expected_error_cost(const std::map<AttributeValues, Label>& decisions,
                           const std::map<AttributeValues, double>& lambda,
                           const std::map<AttributeValues, double>& phi) {
  double mass = 0.0;
  for (const auto& [type, weight] : lambda) {
    if (weight < 0.0) {
      throw UsageError("negative type proportion for " + format_type(type));
    }
    mass += weight;
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw UsageError("type proportions sum to " + std::to_string(mass) +
                     ", not 1");
  }
  double cost = 0.0;
  for (const auto& [type, weight] : lambda) {
    if (weight == 0.0) continue;
    const auto d = decisions.find(type);
    if (d == decisions.end()) {
      throw UsageError("no decision for type " + format_type(type));
    }
    const auto f = phi.find(type);
    if (f == phi.end()) {
      throw UsageError("no class proportion for type " + format_type(type));
    }
    cost += weight *
            (d->second == Label::kPositive ? 1.0 - f->second : f->second);
  }
  return cost;
}

EmpiricalProportions empirical_proportions(const TypeCounts& counts) {
  EmpiricalProportions out;
  for (const TypeCounts::Entry& e : counts.entries()) {
    out.lambda[e.type] = counts.lambda_hat(e.type);
    out.phi[e.type] = counts.phi_hat(e.type);
  }
  return out;
}

}  // namespace treebayes
