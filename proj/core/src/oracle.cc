#include "treebayes/oracle.h"

#include <limits>
#include <string>
#include <vector>

#include "treebayes/errors.h"

namespace treebayes {

BestRule exhaustive_best_rule(const TypeCounts& counts) {
  const int n = counts.num_attributes();
  if (n < 1 || n > kMaxOracleAttributes) {
    throw UsageError("exhaustive search supports 1.." +
                     std::to_string(kMaxOracleAttributes) +
                     " attributes, got " + std::to_string(n));
  }
  const int num_types = 1 << n;

  // Type t has attribute 0 as its most significant bit, so increasing t is
  // lexicographic order of the value vectors.
  std::vector<AttributeValues> types(static_cast<std::size_t>(num_types));
  std::vector<NodeCounts> tallies(static_cast<std::size_t>(num_types));
  for (int t = 0; t < num_types; ++t) {
    AttributeValues& v = types[static_cast<std::size_t>(t)];
    v.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = (t >> (n - 1 - j)) & 1;
    tallies[static_cast<std::size_t>(t)] = counts.counts_of(v);
  }

  // Rule r labels type t negative iff bit (num_types - 1 - t) of r is set;
  // counting r upward walks the rules lexicographically with + before -.
  const std::uint64_t num_rules = std::uint64_t{1} << num_types;
  std::int64_t best_errors = std::numeric_limits<std::int64_t>::max();
  std::uint64_t best_rule = 0;
  for (std::uint64_t r = 0; r < num_rules; ++r) {
    std::int64_t errors = 0;
    for (int t = 0; t < num_types; ++t) {
      const bool negative = (r >> (num_types - 1 - t)) & 1u;
      const NodeCounts& c = tallies[static_cast<std::size_t>(t)];
      errors += negative ? c.pos : c.neg;
    }
    if (errors < best_errors) {
      best_errors = errors;
      best_rule = r;
    }
  }

  BestRule result;
  result.errors = best_errors;
  for (int t = 0; t < num_types; ++t) {
    const bool negative = (best_rule >> (num_types - 1 - t)) & 1u;
    result.decisions[types[static_cast<std::size_t>(t)]] =
        negative ? Label::kNegative : Label::kPositive;
  }
  return result;
}

double beta_posterior_mean(std::int64_t p, std::int64_t n_neg, double a,
                           double b) {
  if (p < 0 || n_neg < 0 || a < 0.0 || b < 0.0) {
    throw UsageError("beta_posterior_mean arguments must be nonnegative");
  }
  const double denominator =
      static_cast<double>(p) + static_cast<double>(n_neg) + a + b;
  if (denominator == 0.0) {
    throw UsageError("posterior mean undefined: no data and no prior mass");
  }
  return (static_cast<double>(p) + a) / denominator;
}

}  // namespace treebayes
