#ifndef TREEBAYES_ORACLE_H_
#define TREEBAYES_ORACLE_H_

#include <cstdint>
#include <map>

#include "treebayes/dataset.h"

namespace treebayes {

inline constexpr int kMaxOracleAttributes = 3;

struct BestRule {
  // A decision for every one of the 2^N types, observed or not.
  std::map<AttributeValues, Label> decisions;
  std::int64_t errors = 0;
};

// Enumerates all 2^(2^N) truth tables over the types and returns the first
// (types in lexicographic order, positive before negative) with the fewest
// training errors. Throws UsageError for N > kMaxOracleAttributes.
BestRule exhaustive_best_rule(const TypeCounts& counts);

// Mean of the Beta(p + a, n_neg + b) posterior: (p + a) / (p + n_neg + a + b).
// Throws UsageError for negative arguments or a zero denominator.
double beta_posterior_mean(std::int64_t p, std::int64_t n_neg, double a,
                           double b);

}  // namespace treebayes

#endif  // TREEBAYES_ORACLE_H_
