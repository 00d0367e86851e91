#ifndef TREEBAYES_SYNTH_H_
#define TREEBAYES_SYNTH_H_

#include <cstdint>

#include "treebayes/dataset.h"
#include "treebayes/tree.h"

namespace treebayes {

struct ParityOptions {
  int bits = 8;
  // All 2^bits vectors once, in lexicographic order; otherwise sample_size
  // vectors drawn uniformly with replacement.
  bool complete = true;
  std::int64_t sample_size = 0;
  std::uint64_t seed = 1;
};

// Label is positive iff the vector has an odd number of ones. Attributes are
// named x0..x{bits-1}. Throws UsageError unless 2 <= bits <= 16.
Dataset gen_parity(const ParityOptions& options);

struct TreeConceptOptions {
  int attrs = 10;
  int depth = 3;
  double noise = 0.1;
  std::int64_t train_size = 200;
  std::int64_t test_size = 2000;
  std::uint64_t seed = 1;
};

struct TreeConcept {
  // Training labels flipped with probability `noise`.
  Dataset train;
  // Noise-free labels.
  Dataset test;
  // Complete tree of the given depth; leaves hold phi 1 (+) or 0 (-) and
  // zero counts.
  DecisionTree target;
  std::int64_t flipped = 0;
};

// Throws UsageError unless 1 <= depth <= attrs, 0 <= noise < 0.5 and
// train_size >= 1.
TreeConcept gen_tree_concept(const TreeConceptOptions& options);

}  // namespace treebayes

#endif  // TREEBAYES_SYNTH_H_
