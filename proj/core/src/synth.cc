#include "treebayes/synth.h"

#include <random>
#include <string>
#include <vector>

#include "treebayes/errors.h"

namespace treebayes {
namespace {

using Rng = std::mt19937_64;

// Portable draws; the std distributions differ between standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

AttributeValues random_vector(Rng& rng, int n) {
  AttributeValues v(static_cast<std::size_t>(n));
  for (auto& bit : v) bit = static_cast<std::uint8_t>(rng() >> 63);
  return v;
}

Schema numbered_schema(int n) {
  Schema s;
  for (int j = 0; j < n; ++j) s.attribute_names.push_back("x" + std::to_string(j));
  return s;
}

Label parity_label(const AttributeValues& v) {
  int ones = 0;
  for (std::uint8_t b : v) ones += b;
  return ones % 2 == 1 ? Label::kPositive : Label::kNegative;
}

NodeId build_target(DecisionTree& tree, Rng& rng, int depth_left,
                    std::vector<int>& available,
                    std::vector<NodeId>& leaves) {
  if (depth_left == 0) {
    const Label label =
        (rng() >> 63) ? Label::kPositive : Label::kNegative;
    const NodeId id = tree.add_leaf(
        {}, label == Label::kPositive ? 1.0 : 0.0, label);
    leaves.push_back(id);
    return id;
  }
  const std::size_t pick = uniform_below(rng, available.size());
  const int attribute = available[pick];
  available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
  const NodeId id = tree.add_test(attribute, {});
  const NodeId yes =
      build_target(tree, rng, depth_left - 1, available, leaves);
  const NodeId no =
      build_target(tree, rng, depth_left - 1, available, leaves);
  tree.set_children(id, yes, no);
  available.insert(available.begin() + static_cast<std::ptrdiff_t>(pick),
                   attribute);
  return id;
}

}  // namespace

Dataset gen_parity(const ParityOptions& options) {
  if (options.bits < 2 || options.bits > 16) {
    throw UsageError("parity bits must be in [2, 16], got " +
                     std::to_string(options.bits));
  }
  if (!options.complete && options.sample_size < 1) {
    throw UsageError("sampled parity needs a positive sample size");
  }
  Dataset data;
  data.schema = numbered_schema(options.bits);
  const int n = options.bits;
  if (options.complete) {
    const std::uint32_t count = 1u << n;
    data.examples.reserve(count);
    for (std::uint32_t t = 0; t < count; ++t) {
      Example ex;
      ex.values.resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        ex.values[static_cast<std::size_t>(j)] = (t >> (n - 1 - j)) & 1u;
      }
      ex.label = parity_label(ex.values);
      data.examples.push_back(std::move(ex));
    }
    return data;
  }
  Rng rng(options.seed);
  data.examples.reserve(static_cast<std::size_t>(options.sample_size));
  for (std::int64_t i = 0; i < options.sample_size; ++i) {
    Example ex;
    ex.values = random_vector(rng, n);
    ex.label = parity_label(ex.values);
    data.examples.push_back(std::move(ex));
  }
  return data;
}

TreeConcept gen_tree_concept(const TreeConceptOptions& options) {
  if (options.attrs < 1) throw UsageError("attrs must be at least 1");
  if (options.depth < 1 || options.depth > options.attrs) {
    throw UsageError("depth must be in [1, attrs], got " +
                     std::to_string(options.depth));
  }
  if (!(options.noise >= 0.0 && options.noise < 0.5)) {
    throw UsageError("noise must be in [0, 0.5)");
  }
  if (options.train_size < 1 || options.test_size < 0) {
    throw UsageError("train_size must be positive and test_size nonnegative");
  }

  Rng rng(options.seed);
  TreeConcept out;
  std::vector<int> available(static_cast<std::size_t>(options.attrs));
  for (int j = 0; j < options.attrs; ++j) available[static_cast<std::size_t>(j)] = j;
  std::vector<NodeId> leaves;
  build_target(out.target, rng, options.depth, available,
               leaves);

  // Both classes must occur; flip one random leaf if the draw was constant.
  bool has_pos = false;
  bool has_neg = false;
  for (NodeId id : leaves) {
    (out.target.node(id).label == Label::kPositive ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    const NodeId victim = leaves[uniform_below(rng, leaves.size())];
    const Label flipped = out.target.node(victim).label == Label::kPositive
                              ? Label::kNegative
                              : Label::kPositive;
    out.target.relabel_leaf(victim, flipped == Label::kPositive ? 1.0 : 0.0,
                            flipped);
  }

  out.train.schema = numbered_schema(options.attrs);
  out.test.schema = out.train.schema;
  for (std::int64_t i = 0; i < options.train_size; ++i) {
    Example ex;
    ex.values = random_vector(rng, options.attrs);
    ex.label = out.target.node(out.target.route(ex.values)).label;
    if (options.noise > 0.0 && unit_uniform(rng) < options.noise) {
      ex.label = ex.label == Label::kPositive ? Label::kNegative
                                              : Label::kPositive;
      ++out.flipped;
    }
    out.train.examples.push_back(std::move(ex));
  }
  for (std::int64_t i = 0; i < options.test_size; ++i) {
    Example ex;
    ex.values = random_vector(rng, options.attrs);
    ex.label = out.target.node(out.target.route(ex.values)).label;
    out.test.examples.push_back(std::move(ex));
  }
  return out;
}

}  // namespace treebayes
