#ifndef TREEBAYES_ENSEMBLE_H_
#define TREEBAYES_ENSEMBLE_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "treebayes/dataset.h"
#include "treebayes/induction.h"
#include "treebayes/scoring.h"
#include "treebayes/tree.h"

namespace treebayes {

enum class Weighting { kUniform, kPosterior };

// At or below this temperature (in bits of gain) split sampling is the
// zero-temperature limit: the greedy choice with the configured tie-break.
inline constexpr double kGreedyTemperature = 1e-6;

struct EnsembleConfig {
  int size = 16;
  double temperature = 0.1;
  std::uint64_t seed = 1;
  Weighting weighting = Weighting::kUniform;

  void validate() const;
};

// Random stream for one sampled tree.
using TreeRng = std::mt19937_64;

// Independent stream for tree `index` of an ensemble seeded with `seed`.
TreeRng tree_stream(std::uint64_t seed, std::uint64_t index);

// Draws an index with probability proportional to exp(gain / temperature)
// (shifted by the maximum gain). temperature may be +infinity.
int sample_split(std::span<const SplitEvaluation> candidates,
                 double temperature, const GrowConfig& config, TreeRng& rng);

// Grows a tree choosing each test by sample_split, then prunes it with
// prune_optimal under `prior`.
DecisionTree sample_tree(const TypeCounts& counts, const GrowConfig& config,
                         const PriorConfig& prior, double temperature,
                         TreeRng& rng);

struct PooledEstimate {
  // One pooled E(phi) per queried type.
  std::vector<double> estimates;
  // RuleScore.total of each tree, in input order.
  std::vector<double> tree_scores;
  // Normalized pooling weight of each tree.
  std::vector<double> weights;
};

// Pools leaf proportions across trees. Uniform weighting averages them;
// posterior weighting uses exp(score - max score). Throws UsageError for an
// empty tree list, mismatched score count, or (posterior) when no tree has
// a finite score.
PooledEstimate pool(std::span<const DecisionTree> trees,
                    std::span<const double> scores,
                    std::span<const AttributeValues> types,
                    Weighting weighting);

// Same, scoring each tree with `prior`.
PooledEstimate pool(std::span<const DecisionTree> trees,
                    std::span<const AttributeValues> types,
                    Weighting weighting, const PriorConfig& prior);

struct EnsembleResult {
  std::vector<DecisionTree> trees;
  PooledEstimate pooled;
};

// Samples config.size trees from independent streams and pools them.
EnsembleResult run_ensemble(const TypeCounts& counts, const GrowConfig& grow,
                            const PriorConfig& prior,
                            const EnsembleConfig& config,
                            std::span<const AttributeValues> types);

}  // namespace treebayes

#endif  // TREEBAYES_ENSEMBLE_H_
