#include "treebayes/model_io.h"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "treebayes/errors.h"

namespace treebayes {
namespace {

constexpr std::string_view kMagic = "treebayes-model";
constexpr int kFormatVersion = 1;

struct Token {
  std::string_view text;
  std::size_t line = 0;
};

std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
  std::vector<Token> tokens;
  std::size_t line = first_line;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '(' || c == ')') {
      tokens.push_back({text.substr(i, 1), line});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && text[i] != '(' && text[i] != ')' &&
             text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
             text[i] != '\n') {
        ++i;
      }
      tokens.push_back({text.substr(start, i - start), line});
    }
  }
  return tokens;
}

// Tree as read from text, before counts of tests are derived.
struct ParsedNode {
  int attribute = -1;
  std::unique_ptr<ParsedNode> yes;
  std::unique_ptr<ParsedNode> no;
  NodeCounts counts;
  double phi_hat = 0.0;
  Label label = Label::kNegative;
};

class TreeParser {
 public:
  TreeParser(std::vector<Token> tokens, const Schema& schema,
             std::string_view source)
      : tokens_(std::move(tokens)), schema_(schema), source_(source) {}

  std::unique_ptr<ParsedNode> parse() {
    auto root = node();
    if (pos_ != tokens_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    const std::size_t line =
        pos_ < tokens_.size() ? tokens_[pos_].line
                              : (tokens_.empty() ? 0 : tokens_.back().line);
    std::ostringstream os;
    os << source_ << ":" << line << ": " << message;
    throw DataError(os.str());
  }

  std::string_view next(std::string_view what) {
    if (pos_ >= tokens_.size()) {
      fail("unexpected end of input, expected " + std::string(what));
    }
    return tokens_[pos_++].text;
  }

  void expect(std::string_view literal) {
    const std::size_t at = pos_;
    if (next(literal) != literal) {
      pos_ = at;
      fail("expected '" + std::string(literal) + "', found '" +
           std::string(tokens_[at].text) + "'");
    }
  }

  std::int64_t count() {
    const std::string_view t = next("a count");
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size() || v < 0) {
      --pos_;
      fail("invalid count '" + std::string(t) + "'");
    }
    return v;
  }

  double proportion() {
    const std::string_view t = next("a proportion");
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size() || !(v >= 0.0) ||
        v > 1.0) {
      --pos_;
      fail("invalid proportion '" + std::string(t) + "'");
    }
    return v;
  }

  std::unique_ptr<ParsedNode> node() {
    expect("(");
    auto n = std::make_unique<ParsedNode>();
    const std::string_view kind = next("'test' or 'leaf'");
    if (kind == "leaf") {
      const std::string_view label = next("a class label");
      if (label == "+") {
        n->label = Label::kPositive;
      } else if (label == "-") {
        n->label = Label::kNegative;
      } else {
        --pos_;
        fail("leaf label must be '+' or '-', found '" + std::string(label) +
             "'");
      }
      n->counts.pos = count();
      n->counts.neg = count();
      n->phi_hat = proportion();
      expect(")");
      return n;
    }
    if (kind != "test") {
      --pos_;
      fail("expected 'test' or 'leaf', found '" + std::string(kind) + "'");
    }
    const std::string_view name = next("an attribute name");
    n->attribute = schema_.attribute_index(name);
    if (n->attribute < 0) {
      --pos_;
      fail("unknown attribute '" + std::string(name) + "'");
    }
    expect("(");
    expect("1");
    n->yes = node();
    expect(")");
    expect("(");
    expect("0");
    n->no = node();
    expect(")");
    expect(")");
    n->counts = n->yes->counts + n->no->counts;
    return n;
  }

  std::vector<Token> tokens_;
  const Schema& schema_;
  std::string_view source_;
  std::size_t pos_ = 0;
};

NodeId emit(DecisionTree& tree, const ParsedNode& n) {
  if (n.attribute < 0) return tree.add_leaf(n.counts, n.phi_hat, n.label);
  const NodeId id = tree.add_test(n.attribute, n.counts);
  const NodeId yes = emit(tree, *n.yes);
  const NodeId no = emit(tree, *n.no);
  tree.set_children(id, yes, no);
  return id;
}

void write_node(std::ostringstream& out, const DecisionTree& tree,
                const Schema& schema, NodeId id, int indent) {
  const TreeNode& n = tree.node(id);
  if (n.is_leaf()) {
    out << "(leaf " << (n.label == Label::kPositive ? '+' : '-') << ' '
        << n.counts.pos << ' ' << n.counts.neg << ' '
        << format_number(n.phi_hat) << ')';
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out << "(test " << schema.attribute_names[static_cast<std::size_t>(n.attribute)]
      << '\n'
      << pad << "(1 ";
  write_node(out, tree, schema, n.yes, indent + 2);
  out << ")\n" << pad << "(0 ";
  write_node(out, tree, schema, n.no, indent + 2);
  out << "))";
}

bool has_space(std::string_view s) {
  return s.find_first_of(" \t\r\n()") != std::string_view::npos;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw InvariantError("number formatting failed");
  return std::string(buffer, end);
}

std::string serialize_model(const Model& model) {
  model.schema.validate();
  model.prior.validate();
  model.tree.check_consistency();
  if (has_space(model.schema.positive_token) ||
      has_space(model.schema.negative_token)) {
    throw UsageError("class tokens cannot contain whitespace or parentheses");
  }
  for (const TreeNode& n : model.tree.nodes()) {
    if (n.attribute >= model.schema.num_attributes()) {
      throw UsageError("tree tests attribute " + std::to_string(n.attribute) +
                       " outside the schema");
    }
  }

  std::ostringstream out;
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "attributes";
  for (const std::string& name : model.schema.attribute_names) {
    out << ' ' << name;
  }
  out << '\n';
  out << "class-tokens " << model.schema.positive_token << ' '
      << model.schema.negative_token << '\n';
  out << "alpha " << format_number(model.prior.alpha) << '\n';
  out << "smoothing " << format_number(model.prior.smoothing_a) << '\n';
  write_node(out, model.tree, model.schema, model.tree.root(), 0);
  out << '\n';
  return out.str();
}

Model parse_model(std::string_view text, std::string_view source_name) {
  Model model;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  auto fail = [&](const std::string& message) -> void {
    std::ostringstream os;
    os << source_name << ":" << line_no << ": " << message;
    throw DataError(os.str());
  };
  auto header_line = [&](std::string_view key) -> std::vector<std::string> {
    while (true) {
      if (offset >= text.size()) {
        fail("unexpected end of file, expected '" + std::string(key) + "'");
      }
      const std::size_t eol = text.find('\n', offset);
      const std::string_view line = text.substr(
          offset, eol == std::string_view::npos ? text.size() - offset
                                                : eol - offset);
      offset = eol == std::string_view::npos ? text.size() : eol + 1;
      ++line_no;
      std::vector<std::string> fields;
      std::istringstream is{std::string(line)};
      std::string field;
      while (is >> field) fields.push_back(field);
      if (fields.empty()) continue;
      if (fields.front() != key) {
        fail("expected '" + std::string(key) + "', found '" + fields.front() +
             "'");
      }
      fields.erase(fields.begin());
      return fields;
    }
  };
  auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
      fail("invalid number '" + s + "'");
    }
    return v;
  };

  const auto magic = header_line(kMagic);
  if (magic.size() != 1 || magic.front() != std::to_string(kFormatVersion)) {
    fail("unsupported model format version");
  }
  model.schema.attribute_names = header_line("attributes");
  const auto tokens = header_line("class-tokens");
  if (tokens.size() != 2) fail("class-tokens needs exactly two tokens");
  model.schema.positive_token = tokens[0];
  model.schema.negative_token = tokens[1];
  const auto alpha = header_line("alpha");
  if (alpha.size() != 1) fail("alpha needs one value");
  model.prior.alpha = number(alpha[0]);
  const auto smoothing = header_line("smoothing");
  if (smoothing.size() != 1) fail("smoothing needs one value");
  model.prior.smoothing_a = number(smoothing[0]);
  try {
    model.schema.validate();
    model.prior.validate();
  } catch (const UsageError& e) {
    fail(e.what());
  }

  TreeParser parser(tokenize(text.substr(offset), line_no + 1), model.schema,
                    source_name);
  const auto root = parser.parse();
  emit(model.tree, *root);
  try {
    model.tree.check_consistency();
  } catch (const InvariantError& e) {
    throw DataError(std::string(source_name) + ": " + e.what());
  }
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  const std::string text = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str(), path.string());
}

}  // namespace treebayes
