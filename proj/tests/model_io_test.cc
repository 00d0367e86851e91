#include "treebayes/model_io.h"

#include <filesystem>
#include <limits>
#include <string>

#include "gtest/gtest.h"
#include "test_util.h"
#include "treebayes/errors.h"
#include "treebayes/induction.h"
#include "treebayes/synth.h"

namespace treebayes {
namespace {

constexpr const char* kHeader =
    "treebayes-model 1\n"
    "attributes a b\n"
    "class-tokens + -\n"
    "alpha 2.5\n"
    "smoothing 0\n";

Model small_model() {
  Model m;
  m.schema.attribute_names = {"a", "b"};
  m.prior = {2.5, 0.0};
  DecisionTree& t = m.tree;
  const NodeId root = t.add_test(0, {3, 2});
  const NodeId yes = t.add_leaf({3, 0}, 1.0, Label::kPositive);
  const NodeId no = t.add_test(1, {0, 2});
  const NodeId ny = t.add_leaf({0, 2}, 0.0, Label::kNegative);
  const NodeId nn = t.add_leaf({0, 0}, 0.1, Label::kNegative);
  t.set_children(no, ny, nn);
  t.set_children(root, yes, no);
  return m;
}

void expect_data_error(const std::string& text, const std::string& fragment) {
  try {
    parse_model(text, "m.txt");
    FAIL() << "expected DataError for:\n" << text;
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << e.what();
  }
}

TEST(SerializeModel, CanonicalText) {
  const std::string expected = std::string(kHeader) +
                               "(test a\n"
                               "  (1 (leaf + 3 0 1))\n"
                               "  (0 (test b\n"
                               "    (1 (leaf - 0 2 0))\n"
                               "    (0 (leaf - 0 0 0.1)))))\n";
  EXPECT_EQ(serialize_model(small_model()), expected);
}

TEST(ParseModel, InverseOfSerialize) {
  const Model m = small_model();
  const Model back = parse_model(serialize_model(m));
  EXPECT_EQ(back.schema, m.schema);
  EXPECT_EQ(back.prior.alpha, m.prior.alpha);
  EXPECT_EQ(back.prior.smoothing_a, m.prior.smoothing_a);
  EXPECT_TRUE(back.tree == m.tree);
  EXPECT_EQ(back.tree.node(0).counts, (NodeCounts{3, 2}));
}

TEST(ParseModel, AcceptsAnyWhitespace) {
  const std::string text = std::string(kHeader) +
                           "\n( test   a (1(leaf + 3 0 1))\t(0 (test b (1 (leaf - 0 2 0))"
                           "\n\n(0 (leaf - 0 0 0.1)))) )";
  EXPECT_TRUE(parse_model(text).tree == small_model().tree);
}

TEST(ParseModel, RoundTripIsByteIdentical) {
  testing::Rng rng(107);
  for (int i = 0; i < 100; ++i) {
    const int attrs = static_cast<int>(testing::uniform_int(rng, 1, 8));
    Model m;
    for (int j = 0; j < attrs; ++j) {
      m.schema.attribute_names.push_back("attr_" + std::to_string(j));
    }
    m.prior = {testing::uniform_real(rng, 0.0, 10.0),
               testing::uniform_real(rng, 0.0, 3.0)};
    m.tree = testing::random_tree(rng, attrs, 12);
    const std::string once = serialize_model(m);
    const Model parsed = parse_model(once);
    EXPECT_TRUE(parsed.tree == m.tree);
    EXPECT_EQ(parsed.prior.alpha, m.prior.alpha);
    EXPECT_EQ(serialize_model(parsed), once);
  }
}

TEST(ParseModel, InfiniteAlphaAndCustomTokens) {
  Model m = small_model();
  m.prior.alpha = std::numeric_limits<double>::infinity();
  m.schema.positive_token = "yes";
  m.schema.negative_token = "no";
  const std::string text = serialize_model(m);
  EXPECT_NE(text.find("alpha inf\n"), std::string::npos);
  EXPECT_NE(text.find("class-tokens yes no\n"), std::string::npos);
  const Model back = parse_model(text);
  EXPECT_EQ(back.prior.alpha, m.prior.alpha);
  EXPECT_EQ(back.schema.positive_token, "yes");
}

TEST(ParseModel, MalformedInput) {
  const std::string h = kHeader;
  expect_data_error("", "m.txt:");
  expect_data_error("treebayes-model 2\n", "version");
  expect_data_error(
      "treebayes-model 1\nattributes a\nclass-tokens +\nalpha 1\nsmoothing 0\n",
      "m.txt:3:");
  expect_data_error(
      "treebayes-model 1\nattributes a\nclass-tokens + -\nalpha x\nsmoothing 0\n",
      "invalid number");
  expect_data_error(
      "treebayes-model 1\nattributes a\nclass-tokens + -\nalpha -1\nsmoothing 0\n"
      "(leaf + 1 0 1)\n",
      "alpha");
  expect_data_error(h, "end of input");
  expect_data_error(h + "(leaf * 1 0 1)", "'+' or '-'");
  expect_data_error(h + "(leaf + 1 0 1.5)", "invalid proportion");
  expect_data_error(h + "(leaf + -1 0 1)", "invalid count");
  expect_data_error(h + "(test c (1 (leaf + 1 0 1)) (0 (leaf + 1 0 1)))",
                    "unknown attribute 'c'");
  expect_data_error(h + "(leaf + 1 0 1) extra", "trailing");
  expect_data_error(h + "(test a (0 (leaf + 1 0 1)) (1 (leaf + 1 0 1)))",
                    "expected '1'");
  // A repeated test on one path is structurally invalid.
  expect_data_error(h +
                        "(test a (1 (test a (1 (leaf + 1 0 1)) (0 (leaf + 1 0 1))))"
                        " (0 (leaf + 1 0 1)))",
                    "m.txt");
}

TEST(ParseModel, ErrorsNameTheLine) {
  const std::string text = std::string(kHeader) +
                           "(test a\n"
                           "  (1 (leaf + 3 0 1))\n"
                           "  (0 (leaf ? 0 2 0)))\n";
  expect_data_error(text, "m.txt:8:");
}

TEST(ModelFiles, SaveThenLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "treebayes_model_io_test";
  std::filesystem::create_directories(dir);
  const Model m = small_model();
  save_model(dir / "m.model", m);
  EXPECT_EQ(serialize_model(load_model(dir / "m.model")), serialize_model(m));
  EXPECT_THROW(load_model(dir / "missing.model"), DataError);
  std::filesystem::remove_all(dir);
}

TEST(ModelFiles, GrownTreeClassifiesTheSameAfterReload) {
  const TreeConcept c = gen_tree_concept({.attrs = 7, .depth = 3, .seed = 11});
  Model m;
  m.schema = c.train.schema;
  m.tree = grow(count_types(c.train.examples), {}, {0.0, 0.5});
  const Model back = parse_model(serialize_model(m));
  for (const Example& e : c.test.examples) {
    const Classification a = classify(m.tree, e.values, 7);
    const Classification b = classify(back.tree, e.values, 7);
    EXPECT_EQ(a.label, b.label);
    EXPECT_EQ(a.phi_hat, b.phi_hat);
  }
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(2.0 / 3.0), "0.6666666666666666");
}

}  // namespace
}  // namespace treebayes
