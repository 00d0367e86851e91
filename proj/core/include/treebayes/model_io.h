#ifndef TREEBAYES_MODEL_IO_H_
#define TREEBAYES_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "treebayes/dataset.h"
#include "treebayes/scoring.h"
#include "treebayes/tree.h"

namespace treebayes {

// A trained tree together with the schema it reads and the prior it was
// pruned under.
struct Model {
  Schema schema;
  PriorConfig prior;
  DecisionTree tree;
};

// Canonical text form:
//
//   treebayes-model 1
//   attributes <name> <name> ...
//   class-tokens <positive> <negative>
//   alpha <number>
//   smoothing <number>
//   (test <name>
//     (1 <subtree>)
//     (0 <subtree>))
//
// with leaves written as (leaf <+|-> <pos> <neg> <phi>). Test counts are
// implied by their leaves. Numbers use the shortest decimal that reads back
// to the same double, so a tree has exactly one serialization.
std::string serialize_model(const Model& model);

// Inverse of serialize_model; accepts any whitespace between tokens.
// Throws DataError with a line number on malformed input.
Model parse_model(std::string_view text,
                  std::string_view source_name = "<model>");

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

// Shortest round-trip decimal form of `value` ("inf" for infinity).
std::string format_number(double value);

}  // namespace treebayes

#endif  // TREEBAYES_MODEL_IO_H_
