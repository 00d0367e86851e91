#ifndef TREEBAYES_DATASET_H_
#define TREEBAYES_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treebayes {

enum class Label : std::uint8_t { kNegative = 0, kPositive = 1 };

// One value per attribute, each 0 or 1. Also serves as the key of an object
// type: two examples are of the same type iff their value vectors are equal.
using AttributeValues = std::vector<std::uint8_t>;

struct Schema {
  std::vector<std::string> attribute_names;
  std::string positive_token = "+";
  std::string negative_token = "-";

  int num_attributes() const {
    return static_cast<int>(attribute_names.size());
  }
  // Index of `name`, or -1.
  int attribute_index(std::string_view name) const;

  // Throws UsageError unless there is at least one attribute and every name
  // is nonempty, unique, and free of whitespace, commas and parentheses.
  void validate() const;

  bool operator==(const Schema&) const = default;
};

struct Example {
  AttributeValues values;
  Label label = Label::kNegative;

  bool operator==(const Example&) const = default;
};

struct Dataset {
  Schema schema;
  std::vector<Example> examples;
  // False when the source had no class column; labels are then meaningless.
  bool labeled = true;
};

// Positive / negative tallies of the examples reaching a node (or belonging
// to a single object type).
struct NodeCounts {
  std::int64_t pos = 0;
  std::int64_t neg = 0;

  std::int64_t total() const { return pos + neg; }
  bool pure() const { return pos == 0 || neg == 0; }

  NodeCounts& operator+=(const NodeCounts& other) {
    pos += other.pos;
    neg += other.neg;
    return *this;
  }
  friend NodeCounts operator+(NodeCounts a, const NodeCounts& b) {
    return a += b;
  }
  bool operator==(const NodeCounts&) const = default;
};

// A single (attribute == value) test on a root-to-node path.
struct AttributeTest {
  int attribute = 0;
  std::uint8_t value = 0;
};

// Conjunction of attribute tests selecting the subset of types at a node.
using Path = std::vector<AttributeTest>;

// Sparse per-type tallies of a training set. Only observed types are
// stored; entries are kept in lexicographic order of their value vectors.
class TypeCounts {
 public:
  struct Entry {
    AttributeValues type;
    NodeCounts counts;
  };

  TypeCounts() = default;

  // Tallies `examples`. Throws UsageError on an empty list or on examples
  // whose value vectors differ in length.
  static TypeCounts from_examples(std::span<const Example> examples);

  int num_attributes() const { return num_attributes_; }
  std::int64_t total() const { return total_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t num_types() const { return entries_.size(); }

  // Counts of one type; zero counts if the type was never observed.
  NodeCounts counts_of(const AttributeValues& type) const;

  // Maximum-likelihood type frequency (p_i + n_i) / n.
  double lambda_hat(const AttributeValues& type) const;
  // Maximum-likelihood positive proportion p_i / (p_i + n_i). Throws
  // UsageError for an unobserved type.
  double phi_hat(const AttributeValues& type) const;

  // Aggregate counts over all types matching `path`.
  NodeCounts counts_at(const Path& path) const;

  bool operator==(const TypeCounts& other) const;

 private:
  std::vector<Entry> entries_;
  std::int64_t total_ = 0;
  int num_attributes_ = 0;
};

TypeCounts count_types(std::span<const Example> examples);

// Counts of the yes (attribute == 1) and no (attribute == 0) branches when
// `attribute` is tested at the node selected by `path`. Throws UsageError
// if the attribute is out of range or already tested on the path.
std::pair<NodeCounts, NodeCounts> split_counts(const TypeCounts& counts,
                                               const Path& path,
                                               int attribute);

struct CsvOptions {
  std::string positive_token = "+";
  std::string negative_token = "-";
  // When false the file holds attribute columns only.
  bool class_column = true;
};

// Parses the dataset CSV format: a header row naming the attributes (plus
// the class column), then one row per example. Attribute tokens are "0" or
// "1". Class tokens are the configured pair, with "1"/"0" always accepted.
// Errors name the source, line and column.
Dataset parse_csv(std::istream& in, const CsvOptions& options = {},
                  std::string_view source_name = "<input>");
Dataset load_csv(const std::filesystem::path& path,
                 const CsvOptions& options = {});

// Writes `dataset` in the same format, using the schema's class tokens.
void write_csv(std::ostream& out, const Dataset& dataset,
               std::string_view class_column_name = "class");
void save_csv(const std::filesystem::path& path, const Dataset& dataset,
              std::string_view class_column_name = "class");

// Deterministic random split: round(fraction * size) examples go to the
// second (holdout) part, the rest to the first, both in original order.
// Throws UsageError unless 0 <= fraction < 1 and the training part is
// nonempty.
std::pair<Dataset, Dataset> split_holdout(const Dataset& dataset,
                                          double fraction, std::uint64_t seed);

// "0101" style rendering of a value vector, and its inverse.
std::string format_type(const AttributeValues& values);
AttributeValues parse_type(std::string_view bits);

}  // namespace treebayes

#endif  // TREEBAYES_DATASET_H_
