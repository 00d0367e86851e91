#include "treebayes/ensemble.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "treebayes/errors.h"
#include "treebayes/pruning.h"

namespace treebayes {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; identical on every
// standard library, unlike std::uniform_real_distribution.
double unit_uniform(TreeRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void EnsembleConfig::validate() const {
  if (size < 1) throw UsageError("ensemble size must be at least 1");
  if (!(temperature > 0.0)) {
    throw UsageError("temperature must be positive");
  }
}

TreeRng tree_stream(std::uint64_t seed, std::uint64_t index) {
  return TreeRng(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

int sample_split(std::span<const SplitEvaluation> candidates,
                 double temperature, const GrowConfig& config, TreeRng& rng) {
  if (candidates.empty()) throw UsageError("no candidate splits");
  if (!(temperature > 0.0)) throw UsageError("temperature must be positive");
  if (temperature <= kGreedyTemperature) {
    return *best_attribute(candidates, config);
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const SplitEvaluation& c : candidates) top = std::max(top, c.gain_bits);

  std::vector<double> weights(candidates.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    weights[i] = std::exp((candidates[i].gain_bits - top) / temperature);
    sum += weights[i];
  }
  double u = unit_uniform(rng) * sum;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (u < weights[i]) return candidates[i].attribute;
    u -= weights[i];
  }
  // Round-off left u just past the last bucket.
  return candidates.back().attribute;
}

DecisionTree sample_tree(const TypeCounts& counts, const GrowConfig& config,
                         const PriorConfig& prior, double temperature,
                         TreeRng& rng) {
  const AttributeChooser sampler =
      [&](std::span<const SplitEvaluation> candidates) {
        return sample_split(candidates, temperature, config, rng);
      };
  const DecisionTree grown = grow_with(counts, config, prior, sampler);
  return prune_optimal(grown, prior).tree;
}

PooledEstimate pool(std::span<const DecisionTree> trees,
                    std::span<const double> scores,
                    std::span<const AttributeValues> types,
                    Weighting weighting) {
  if (trees.empty()) throw UsageError("cannot pool an empty set of trees");
  if (scores.size() != trees.size()) {
    throw UsageError("need one score per tree");
  }
  PooledEstimate out;
  out.tree_scores.assign(scores.begin(), scores.end());
  out.weights.assign(trees.size(), 1.0);
  if (weighting == Weighting::kPosterior) {
    const double top = *std::max_element(scores.begin(), scores.end());
    if (!std::isfinite(top)) {
      throw UsageError("posterior pooling needs at least one finite score");
    }
    for (std::size_t t = 0; t < trees.size(); ++t) {
      out.weights[t] = std::exp(scores[t] - top);
    }
  }
  double norm = 0.0;
  for (double w : out.weights) norm += w;
  for (double& w : out.weights) w /= norm;

  out.estimates.reserve(types.size());
  for (const AttributeValues& type : types) {
    // Running weighted mean: identical inputs pool to exactly that value.
    double estimate = 0.0;
    double seen = 0.0;
    for (std::size_t t = 0; t < trees.size(); ++t) {
      if (out.weights[t] == 0.0) continue;
      seen += out.weights[t];
      const double phi = trees[t].node(trees[t].route(type)).phi_hat;
      estimate += out.weights[t] / seen * (phi - estimate);
    }
    out.estimates.push_back(std::clamp(estimate, 0.0, 1.0));
  }
  return out;
}

PooledEstimate pool(std::span<const DecisionTree> trees,
                    std::span<const AttributeValues> types,
                    Weighting weighting, const PriorConfig& prior) {
  std::vector<double> scores;
  scores.reserve(trees.size());
  for (const DecisionTree& tree : trees) {
    scores.push_back(tree_score(tree, prior).total);
  }
  return pool(trees, scores, types, weighting);
}

EnsembleResult run_ensemble(const TypeCounts& counts, const GrowConfig& grow,
                            const PriorConfig& prior,
                            const EnsembleConfig& config,
                            std::span<const AttributeValues> types) {
  config.validate();
  for (const AttributeValues& type : types) {
    if (static_cast<int>(type.size()) != counts.num_attributes()) {
      throw UsageError("query type " + format_type(type) + " has " +
                       std::to_string(type.size()) + " values, expected " +
                       std::to_string(counts.num_attributes()));
    }
  }
  EnsembleResult result;
  result.trees.reserve(static_cast<std::size_t>(config.size));
  for (int t = 0; t < config.size; ++t) {
    TreeRng rng = tree_stream(config.seed, static_cast<std::uint64_t>(t));
    result.trees.push_back(
        sample_tree(counts, grow, prior, config.temperature, rng));
  }
  result.pooled = pool(result.trees, types, config.weighting, prior);
  return result;
}

}  // namespace treebayes
