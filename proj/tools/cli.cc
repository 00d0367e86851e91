#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "treebayes/dataset.h"
#include "treebayes/ensemble.h"
#include "treebayes/errors.h"
#include "treebayes/induction.h"
#include "treebayes/model_io.h"
#include "treebayes/pruning.h"
#include "treebayes/scoring.h"
#include "treebayes/synth.h"

namespace treebayes::cli {
namespace {

struct DataFlags {
  std::string path;
  std::string positive_token = "+";
  std::string negative_token = "-";

  void add(CLI::App* cmd, const std::string& flag = "--data") {
    cmd->add_option(flag, path, "Training CSV")->required();
    cmd->add_option("--pos-token", positive_token, "Positive class token");
    cmd->add_option("--neg-token", negative_token, "Negative class token");
  }

  Dataset load() const {
    CsvOptions options;
    options.positive_token = positive_token;
    options.negative_token = negative_token;
    return load_csv(path, options);
  }
};

struct GrowFlags {
  double alpha = 0.0;
  double smoothing = 0.0;
  std::int64_t min_leaf = 1;
  std::optional<int> max_depth;
  std::string tie_break = "lowest";

  void add(CLI::App* cmd, bool with_alpha = true) {
    if (with_alpha) {
      cmd->add_option("--alpha", alpha,
                      "Complexity penalty per test, in nats (>= 0)");
    }
    cmd->add_option("--smoothing", smoothing,
                    "Leaf pseudocount a; 0 means maximum likelihood");
    cmd->add_option("--min-leaf", min_leaf,
                    "Nodes with fewer examples are not split");
    cmd->add_option("--max-depth", max_depth, "Maximum number of tests on a path");
    cmd->add_option("--tie-break", tie_break, "lowest | highest attribute index")
        ->check(CLI::IsMember({"lowest", "highest"}));
  }

  GrowConfig grow() const {
    GrowConfig g;
    g.min_leaf = min_leaf;
    g.max_depth = max_depth;
    g.tie_break =
        tie_break == "highest" ? TieBreak::kHighestIndex : TieBreak::kLowestIndex;
    g.validate();
    return g;
  }

  PriorConfig prior() const {
    PriorConfig p{alpha, smoothing};
    p.validate();
    return p;
  }
};

const char* token(const Schema& schema, Label label) {
  return label == Label::kPositive ? schema.positive_token.c_str()
                                   : schema.negative_token.c_str();
}

std::string rate(std::int64_t count, std::int64_t total) {
  if (total == 0) return "0";
  return format_number(static_cast<double>(count) /
                       static_cast<double>(total));
}

// Reads a CSV whose attribute columns must match the model's schema, with
// or without a trailing class column.
Dataset load_for_model(const std::string& path, const Schema& schema,
                       bool require_labels) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string header;
  while (std::getline(in, header)) {
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (!header.empty()) break;
  }
  std::vector<std::string> columns;
  {
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ',')) columns.push_back(col);
    if (!header.empty() && header.back() == ',') columns.emplace_back();
  }
  const auto& names = schema.attribute_names;
  const bool exact = columns == names;
  const bool with_class =
      columns.size() == names.size() + 1 &&
      std::equal(names.begin(), names.end(), columns.begin());
  if (!(with_class || (exact && !require_labels))) {
    std::ostringstream msg;
    msg << path << ": columns do not match the model";
    if (exact && require_labels) {
      msg << "; a class column is required";
      throw DataError(msg.str());
    }
    std::vector<std::string> data_attrs = columns;
    if (columns.size() > names.size() && !data_attrs.empty()) {
      data_attrs.pop_back();  // treat the last column as the class column
    }
    for (std::size_t i = 0; i < std::max(names.size(), data_attrs.size());
         ++i) {
      const std::string model_col = i < names.size() ? names[i] : "<none>";
      const std::string data_col =
          i < data_attrs.size() ? data_attrs[i] : "<none>";
      if (model_col != data_col) {
        msg << "; column " << (i + 1) << ": model '" << model_col
            << "', data '" << data_col << "'";
      }
    }
    throw DataError(msg.str());
  }
  in.clear();
  in.seekg(0);
  CsvOptions options;
  options.positive_token = schema.positive_token;
  options.negative_token = schema.negative_token;
  options.class_column = with_class;
  return parse_csv(in, options, path);
}

void print_score(std::ostream& out, const RuleScore& s) {
  out << "log_likelihood: " << format_number(s.log_likelihood) << '\n'
      << "complexity_penalty: " << format_number(s.complexity_penalty) << '\n'
      << "score_total: " << format_number(s.total) << '\n';
}

int cmd_train(const DataFlags& data, const GrowFlags& flags,
              const std::string& out_path, std::ostream& out) {
  const GrowConfig grow_config = flags.grow();
  const PriorConfig prior = flags.prior();
  const Dataset dataset = data.load();
  const TypeCounts counts = count_types(dataset.examples);
  const DecisionTree grown = grow(counts, grow_config, prior);
  const PruneResult pruned = prune_optimal(grown, prior);

  out << "examples: " << counts.total() << '\n'
      << "types: " << counts.num_types() << '\n'
      << "grown_leaves: " << grown.leaf_count() << '\n'
      << "leaves: " << pruned.tree.leaf_count() << '\n'
      << "internal_nodes: " << pruned.tree.internal_count() << '\n'
      << "pruned_tests: " << pruned.pruned_node_count << '\n'
      << "training_errors: " << pruned.tree.training_errors() << '\n'
      << "training_error_rate: "
      << rate(pruned.tree.training_errors(), counts.total()) << '\n';
  print_score(out, pruned.score);

  if (!out_path.empty()) {
    Model model{dataset.schema, prior, pruned.tree};
    save_model(out_path, model);
    out << "model: " << out_path << '\n';
  }
  return kOk;
}

int cmd_classify(const std::string& model_path, const std::string& data_path,
                 bool proportions, std::ostream& out) {
  const Model model = load_model(model_path);
  const Dataset data = load_for_model(data_path, model.schema, false);
  for (const Example& ex : data.examples) {
    const Classification c =
        classify(model.tree, ex.values, model.schema.num_attributes());
    out << token(model.schema, c.label);
    if (proportions) out << ',' << format_number(c.phi_hat);
    out << '\n';
  }
  return kOk;
}

int cmd_eval(const std::string& model_path, const std::string& data_path,
             std::ostream& out) {
  const Model model = load_model(model_path);
  const Dataset data = load_for_model(data_path, model.schema, true);
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (const Example& ex : data.examples) {
    const Label predicted =
        classify(model.tree, ex.values, model.schema.num_attributes()).label;
    if (predicted == Label::kPositive) {
      (ex.label == Label::kPositive ? tp : fp) += 1;
    } else {
      (ex.label == Label::kNegative ? tn : fn) += 1;
    }
  }
  const auto n = static_cast<std::int64_t>(data.examples.size());
  out << "examples: " << n << '\n'
      << "errors: " << (fp + fn) << '\n'
      << "error_rate: " << rate(fp + fn, n) << '\n'
      << "tp: " << tp << '\n'
      << "fp: " << fp << '\n'
      << "tn: " << tn << '\n'
      << "fn: " << fn << '\n';
  return kOk;
}

int cmd_sweep(const DataFlags& data, const GrowFlags& flags,
              const std::string& holdout_path, double holdout_fraction,
              std::uint64_t seed, const std::vector<double>& grid,
              const std::string& csv_path, std::ostream& out) {
  if (grid.empty()) throw UsageError("--alpha-grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) {
      throw UsageError("--alpha-grid must be ascending");
    }
  }
  for (double a : grid) PriorConfig{a, flags.smoothing}.validate();
  const GrowConfig grow_config = flags.grow();
  const PriorConfig base = flags.prior();

  Dataset train = data.load();
  Dataset holdout;
  if (!holdout_path.empty()) {
    holdout = load_for_model(holdout_path, train.schema, true);
  } else if (holdout_fraction > 0.0) {
    auto parts = split_holdout(train, holdout_fraction, seed);
    train = std::move(parts.first);
    holdout = std::move(parts.second);
  }
  const TypeCounts counts = count_types(train.examples);
  const TypeCounts holdout_counts = holdout.examples.empty()
                                        ? TypeCounts()
                                        : count_types(holdout.examples);
  const DecisionTree grown = grow(counts, grow_config, base);
  const std::vector<SweepRow> rows =
      sensitivity_sweep(grown, grid, holdout_counts, base);

  out << std::left << std::setw(12) << "alpha" << std::setw(8) << "leaves"
      << std::setw(14) << "train_err" << std::setw(14) << "holdout_err"
      << std::setw(14) << "train_count" << "holdout_count" << '\n';
  for (const SweepRow& r : rows) {
    std::ostringstream train_rate, holdout_rate;
    train_rate << std::fixed << std::setprecision(6) << r.train_error_rate;
    holdout_rate << std::fixed << std::setprecision(6) << r.holdout_error_rate;
    out << std::setw(12) << format_number(r.alpha) << std::setw(8) << r.leaves
        << std::setw(14) << train_rate.str() << std::setw(14)
        << holdout_rate.str() << std::setw(14) << r.train_errors
        << r.holdout_errors << '\n';
  }
  out << std::right;

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw DataError("cannot write '" + csv_path + "'");
    csv << "alpha,leaves,train_err,holdout_err\n";
    for (const SweepRow& r : rows) {
      csv << format_number(r.alpha) << ',' << r.leaves << ','
          << format_number(r.train_error_rate) << ','
          << format_number(r.holdout_error_rate) << '\n';
    }
  }
  return kOk;
}

int cmd_ensemble(const DataFlags& data, const GrowFlags& flags,
                 const EnsembleConfig& config, const std::string& types_flag,
                 std::ostream& out) {
  const GrowConfig grow_config = flags.grow();
  const PriorConfig prior = flags.prior();
  config.validate();
  const Dataset dataset = data.load();
  const TypeCounts counts = count_types(dataset.examples);

  std::vector<AttributeValues> types;
  if (types_flag.empty()) {
    for (const TypeCounts::Entry& e : counts.entries()) types.push_back(e.type);
  } else {
    std::stringstream ss(types_flag);
    std::string item;
    while (std::getline(ss, item, ',')) {
      AttributeValues t = parse_type(item);
      if (static_cast<int>(t.size()) != counts.num_attributes()) {
        throw UsageError("type '" + item + "' must have " +
                         std::to_string(counts.num_attributes()) + " bits");
      }
      types.push_back(std::move(t));
    }
  }

  const EnsembleResult result =
      run_ensemble(counts, grow_config, prior, config, types);
  out << "tree,leaves,internal_nodes,score_total,weight\n";
  for (std::size_t t = 0; t < result.trees.size(); ++t) {
    out << t << ',' << result.trees[t].leaf_count() << ','
        << result.trees[t].internal_count() << ','
        << format_number(result.pooled.tree_scores[t]) << ','
        << format_number(result.pooled.weights[t]) << '\n';
  }
  out << "type,estimate\n";
  for (std::size_t i = 0; i < types.size(); ++i) {
    out << format_type(types[i]) << ','
        << format_number(result.pooled.estimates[i]) << '\n';
  }
  return kOk;
}

std::int64_t count_positive(const Dataset& d) {
  return std::count_if(d.examples.begin(), d.examples.end(),
                       [](const Example& e) {
                         return e.label == Label::kPositive;
                       });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Bayesian decision-tree induction: grow, prune, pool"};
  app.name("treebayes");
  app.require_subcommand(1);

  // synth
  CLI::App* synth = app.add_subcommand("synth", "Generate synthetic datasets");
  synth->require_subcommand(1);
  ParityOptions parity;
  std::string parity_out;
  CLI::App* synth_parity =
      synth->add_subcommand("parity", "Parity concept over N bits");
  synth_parity->add_option("--bits", parity.bits, "Number of bits (2..16)");
  synth_parity->add_option("--sample-size", parity.sample_size,
                           "Draw this many vectors instead of all 2^N");
  synth_parity->add_option("--seed", parity.seed, "Random seed");
  synth_parity->add_option("--out", parity_out, "Output CSV")->required();

  TreeConceptOptions concept_opts;
  std::string concept_out, concept_test_out, concept_target_out;
  CLI::App* synth_tree =
      synth->add_subcommand("tree", "Noisy random tree concept");
  synth_tree->add_option("--attrs", concept_opts.attrs, "Number of attributes");
  synth_tree->add_option("--depth", concept_opts.depth, "Target tree depth");
  synth_tree->add_option("--noise", concept_opts.noise,
                         "Training label flip probability");
  synth_tree->add_option("--train-size", concept_opts.train_size);
  synth_tree->add_option("--test-size", concept_opts.test_size);
  synth_tree->add_option("--seed", concept_opts.seed, "Random seed");
  synth_tree->add_option("--out", concept_out, "Training CSV")->required();
  synth_tree->add_option("--test-out", concept_test_out, "Noise-free test CSV");
  synth_tree->add_option("--target-out", concept_target_out,
                         "Target tree as a model file");

  // train
  CLI::App* train = app.add_subcommand("train", "Grow a full tree and prune it");
  DataFlags train_data;
  GrowFlags train_flags;
  std::string train_out;
  train_data.add(train);
  train_flags.add(train);
  train->add_option("--out", train_out, "Model file to write");

  // classify
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Label each row of a CSV");
  std::string classify_model, classify_data;
  bool classify_proportions = false;
  classify_cmd->add_option("--model", classify_model)->required();
  classify_cmd->add_option("--data", classify_data)->required();
  classify_cmd->add_flag("--proportions", classify_proportions,
                         "Also print the leaf proportion");

  // eval
  CLI::App* eval = app.add_subcommand("eval", "Error rate and confusion counts");
  std::string eval_model, eval_data;
  eval->add_option("--model", eval_model)->required();
  eval->add_option("--data", eval_data)->required();

  // sweep
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Prune one grown tree over a grid of alphas");
  DataFlags sweep_data;
  GrowFlags sweep_flags;
  std::string sweep_holdout, sweep_csv;
  double sweep_fraction = 0.0;
  std::uint64_t sweep_seed = 1;
  std::vector<double> sweep_grid;
  sweep_data.add(sweep);
  sweep_flags.add(sweep, false);
  sweep->add_option("--holdout", sweep_holdout, "Holdout CSV");
  sweep->add_option("--holdout-fraction", sweep_fraction,
                    "Hold out this fraction of --data instead");
  sweep->add_option("--seed", sweep_seed, "Seed for --holdout-fraction");
  sweep->add_option("--alpha-grid", sweep_grid, "Comma-separated alphas")
      ->required()
      ->delimiter(',');
  sweep->add_option("--csv", sweep_csv,
                    "Also write alpha,leaves,train_err,holdout_err here");

  // ensemble
  CLI::App* ensemble = app.add_subcommand(
      "ensemble", "Pool leaf proportions over sampled trees");
  DataFlags ens_data;
  GrowFlags ens_flags;
  EnsembleConfig ens_config;
  std::string ens_weighting = "uniform";
  std::string ens_types;
  ens_data.add(ensemble);
  ens_flags.add(ensemble);
  ensemble->add_option("--size", ens_config.size, "Number of trees");
  ensemble->add_option("--temperature", ens_config.temperature,
                       "Split sampling temperature (bits of gain)");
  ensemble->add_option("--seed", ens_config.seed, "Random seed");
  ensemble->add_option("--weighting", ens_weighting, "uniform | posterior")
      ->check(CLI::IsMember({"uniform", "posterior"}));
  ensemble->add_option("--types", ens_types,
                       "Comma-separated bit strings to estimate "
                       "(default: every training type)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (synth_parity->parsed()) {
      parity.complete = parity.sample_size == 0;
      const Dataset d = gen_parity(parity);
      save_csv(parity_out, d);
      out << "examples: " << d.examples.size() << '\n'
          << "positive: " << count_positive(d) << '\n'
          << "wrote: " << parity_out << '\n';
      return kOk;
    }
    if (synth_tree->parsed()) {
      const TreeConcept c = gen_tree_concept(concept_opts);
      save_csv(concept_out, c.train);
      if (!concept_test_out.empty()) save_csv(concept_test_out, c.test);
      if (!concept_target_out.empty()) {
        save_model(concept_target_out, Model{c.train.schema, {}, c.target});
      }
      out << "train_examples: " << c.train.examples.size() << '\n'
          << "train_positive: " << count_positive(c.train) << '\n'
          << "flipped_labels: " << c.flipped << '\n'
          << "test_examples: " << c.test.examples.size() << '\n'
          << "target_leaves: " << c.target.leaf_count() << '\n'
          << "wrote: " << concept_out << '\n';
      return kOk;
    }
    if (train->parsed()) {
      return cmd_train(train_data, train_flags, train_out, out);
    }
    if (classify_cmd->parsed()) {
      return cmd_classify(classify_model, classify_data, classify_proportions,
                          out);
    }
    if (eval->parsed()) return cmd_eval(eval_model, eval_data, out);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_data, sweep_flags, sweep_holdout, sweep_fraction,
                       sweep_seed, sweep_grid, sweep_csv, out);
    }
    if (ensemble->parsed()) {
      ens_config.weighting = ens_weighting == "posterior" ? Weighting::kPosterior
                                                          : Weighting::kUniform;
      return cmd_ensemble(ens_data, ens_flags, ens_config, ens_types, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  err << app.help();
  return kUsage;
}

}  // namespace treebayes::cli
