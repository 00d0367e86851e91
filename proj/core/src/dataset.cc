#include "treebayes/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <ostream>
#include <set>
#include <sstream>

#include "treebayes/errors.h"

namespace treebayes {
namespace {

bool is_reserved_char(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',' ||
         c == '(' || c == ')';
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string location(std::string_view source, std::size_t line) {
  std::ostringstream os;
  os << source << ":" << line;
  return os.str();
}

}  // namespace

int Schema::attribute_index(std::string_view name) const {
  const auto it =
      std::find(attribute_names.begin(), attribute_names.end(), name);
  if (it == attribute_names.end()) return -1;
  return static_cast<int>(it - attribute_names.begin());
}

void Schema::validate() const {
  if (attribute_names.empty()) {
    throw UsageError("schema must have at least one attribute");
  }
  std::set<std::string_view> seen;
  for (const std::string& name : attribute_names) {
    if (name.empty()) throw UsageError("attribute names must be nonempty");
    if (std::any_of(name.begin(), name.end(), is_reserved_char)) {
      throw UsageError("attribute name '" + name +
                       "' contains whitespace, a comma or a parenthesis");
    }
    if (!seen.insert(name).second) {
      throw UsageError("duplicate attribute name '" + name + "'");
    }
  }
  if (positive_token.empty() || negative_token.empty() ||
      positive_token == negative_token) {
    throw UsageError("class tokens must be nonempty and distinct");
  }
}

TypeCounts TypeCounts::from_examples(std::span<const Example> examples) {
  if (examples.empty()) throw UsageError("cannot count an empty example list");
  TypeCounts result;
  result.num_attributes_ = static_cast<int>(examples.front().values.size());
  std::map<AttributeValues, NodeCounts> tally;
  for (const Example& ex : examples) {
    if (static_cast<int>(ex.values.size()) != result.num_attributes_) {
      throw UsageError("examples have differing numbers of attributes");
    }
    NodeCounts& c = tally[ex.values];
    if (ex.label == Label::kPositive) {
      ++c.pos;
    } else {
      ++c.neg;
    }
  }
  result.entries_.reserve(tally.size());
  for (auto& [type, counts] : tally) {
    result.entries_.push_back({type, counts});
  }
  result.total_ = static_cast<std::int64_t>(examples.size());
  return result;
}

NodeCounts TypeCounts::counts_of(const AttributeValues& type) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), type,
      [](const Entry& e, const AttributeValues& key) { return e.type < key; });
  if (it == entries_.end() || it->type != type) return {};
  return it->counts;
}

double TypeCounts::lambda_hat(const AttributeValues& type) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(counts_of(type).total()) /
         static_cast<double>(total_);
}

double TypeCounts::phi_hat(const AttributeValues& type) const {
  const NodeCounts c = counts_of(type);
  if (c.total() == 0) {
    throw UsageError("phi_hat is undefined for unobserved type " +
                     format_type(type));
  }
  return static_cast<double>(c.pos) / static_cast<double>(c.total());
}

NodeCounts TypeCounts::counts_at(const Path& path) const {
  NodeCounts result;
  for (const Entry& e : entries_) {
    const bool match = std::all_of(
        path.begin(), path.end(), [&](const AttributeTest& t) {
          return e.type[static_cast<std::size_t>(t.attribute)] == t.value;
        });
    if (match) result += e.counts;
  }
  return result;
}

bool TypeCounts::operator==(const TypeCounts& other) const {
  if (total_ != other.total_ || num_attributes_ != other.num_attributes_ ||
      entries_.size() != other.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].type != other.entries_[i].type ||
        entries_[i].counts != other.entries_[i].counts) {
      return false;
    }
  }
  return true;
}

TypeCounts count_types(std::span<const Example> examples) {
  return TypeCounts::from_examples(examples);
}

std::pair<NodeCounts, NodeCounts> split_counts(const TypeCounts& counts,
                                               const Path& path,
                                               int attribute) {
  if (attribute < 0 || attribute >= counts.num_attributes()) {
    throw UsageError("attribute index " + std::to_string(attribute) +
                     " out of range");
  }
  for (const AttributeTest& t : path) {
    if (t.attribute == attribute) {
      throw UsageError("attribute " + std::to_string(attribute) +
                       " is already tested on this path");
    }
  }
  Path branch = path;
  branch.push_back({attribute, 1});
  const NodeCounts yes = counts.counts_at(branch);
  branch.back().value = 0;
  const NodeCounts no = counts.counts_at(branch);
  return {yes, no};
}

Dataset parse_csv(std::istream& in, const CsvOptions& options,
                  std::string_view source_name) {
  Dataset dataset;
  dataset.labeled = options.class_column;
  dataset.schema.positive_token = options.positive_token;
  dataset.schema.negative_token = options.negative_token;

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t arity = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.empty()) continue;

    std::vector<std::string> fields = split_fields(line);
    if (!have_header) {
      if (options.class_column) {
        if (fields.size() < 2) {
          throw DataError(location(source_name, line_no) +
                          ": header needs at least one attribute column and "
                          "a class column");
        }
        fields.pop_back();
      }
      dataset.schema.attribute_names = std::move(fields);
      try {
        dataset.schema.validate();
      } catch (const UsageError& e) {
        throw DataError(location(source_name, line_no) + ": " + e.what());
      }
      arity = dataset.schema.attribute_names.size() +
              (options.class_column ? 1 : 0);
      have_header = true;
      continue;
    }

    if (fields.size() != arity) {
      throw DataError(location(source_name, line_no) + ": expected " +
                      std::to_string(arity) + " columns, found " +
                      std::to_string(fields.size()) + " at line " +
                      std::to_string(line_no));
    }
    Example ex;
    ex.values.resize(dataset.schema.attribute_names.size());
    for (std::size_t j = 0; j < ex.values.size(); ++j) {
      if (fields[j] == "0") {
        ex.values[j] = 0;
      } else if (fields[j] == "1") {
        ex.values[j] = 1;
      } else {
        throw DataError(location(source_name, line_no) +
                        ": unknown attribute token '" + fields[j] +
                        "' at line " + std::to_string(line_no) + ", column " +
                        std::to_string(j + 1) + " (" +
                        dataset.schema.attribute_names[j] + ")");
      }
    }
    if (options.class_column) {
      const std::string& token = fields.back();
      if (token == options.positive_token || token == "1") {
        ex.label = Label::kPositive;
      } else if (token == options.negative_token || token == "0") {
        ex.label = Label::kNegative;
      } else {
        throw DataError(location(source_name, line_no) +
                        ": unknown class token '" + token + "' at line " +
                        std::to_string(line_no) + ", column " +
                        std::to_string(fields.size()));
      }
    }
    dataset.examples.push_back(std::move(ex));
  }
  if (!have_header) {
    throw DataError(std::string(source_name) + ": missing header row");
  }
  if (dataset.examples.empty()) {
    throw DataError(std::string(source_name) + ": no data rows");
  }
  return dataset;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in, options, path.string());
}

void write_csv(std::ostream& out, const Dataset& dataset,
               std::string_view class_column_name) {
  const Schema& schema = dataset.schema;
  for (const std::string& name : schema.attribute_names) out << name << ',';
  out << class_column_name << '\n';
  for (const Example& ex : dataset.examples) {
    for (std::uint8_t v : ex.values) out << (v ? '1' : '0') << ',';
    out << (ex.label == Label::kPositive ? schema.positive_token
                                         : schema.negative_token)
        << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const Dataset& dataset,
              std::string_view class_column_name) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_csv(out, dataset, class_column_name);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& dataset,
                                          double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw UsageError("holdout fraction must be in [0, 1)");
  }
  const std::size_t n = dataset.examples.size();
  const auto holdout_size =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (holdout_size >= n) {
    throw UsageError("holdout fraction leaves no training examples");
  }
  // Partial Fisher-Yates with rejection sampling, so the split does not
  // depend on the standard library's distribution implementations.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < holdout_size; ++i) {
    const std::uint64_t bound = n - i;
    const std::uint64_t limit =
        std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    std::swap(order[i], order[i + static_cast<std::size_t>(x % bound)]);
  }
  std::vector<bool> in_holdout(n, false);
  for (std::size_t i = 0; i < holdout_size; ++i) in_holdout[order[i]] = true;

  std::pair<Dataset, Dataset> parts;
  parts.first.schema = parts.second.schema = dataset.schema;
  parts.first.labeled = parts.second.labeled = dataset.labeled;
  for (std::size_t i = 0; i < n; ++i) {
    (in_holdout[i] ? parts.second : parts.first)
        .examples.push_back(dataset.examples[i]);
  }
  return parts;
}

std::string format_type(const AttributeValues& values) {
  std::string s;
  s.reserve(values.size());
  for (std::uint8_t v : values) s.push_back(v ? '1' : '0');
  return s;
}

AttributeValues parse_type(std::string_view bits) {
  AttributeValues values;
  values.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw UsageError("type '" + std::string(bits) +
                       "' must consist of 0/1 characters");
    }
    values.push_back(c == '1' ? 1 : 0);
  }
  return values;
}

}  // namespace treebayes
