// Command line front end: train/predict/evaluate/analyze plus the synthetic
// data generator and the baseline comparison table.
//
// Exit codes: 0 success, 2 bad flags or configuration, 3 data errors,
// 4 training divergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrt/nrt.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFlags = 2;
constexpr int kExitData = 3;
constexpr int kExitDiverged = 4;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Runs a command body after flag validation; maps domain errors onto the
// documented exit codes.
int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const nrt::DivergedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const nrt::DegenerateTestError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const nrt::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}

struct TrainFlags {
  std::string data;
  std::string response_col;
  std::string method = "scan";
  std::string penalty = "entropy";
  double lambda = 0.5;
  double beta = 10.0;
  std::size_t max_depth = 6;
  std::size_t min_leaf = 5;
  std::size_t epochs = 200;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  std::size_t seeds = 1;
  std::string dev;
  std::string out;
};

nrt::TrainConfig config_from_flags(const TrainFlags& f) {
  nrt::TrainConfig cfg;
  cfg.method = nrt::split_method_from_string(f.method);
  cfg.penalty = nrt::penalty_from_string(f.penalty);
  cfg.lambda = f.lambda;
  cfg.beta = f.beta;
  cfg.max_depth = f.max_depth;
  cfg.min_node_size = f.min_leaf;
  cfg.epochs_per_node = f.epochs;
  cfg.learning_rate = f.lr;
  cfg.seed = f.seed;
  cfg.num_seeds = f.seeds;
  cfg.validate();
  return cfg;
}

// Reorders a feature table's columns to the model's recorded feature names.
// Falls back to positional use when the names are absent but the width
// already matches.
std::vector<std::vector<double>> select_features(
    const nrt::FeatureTable& table, const std::vector<std::string>& wanted) {
  std::vector<std::size_t> index(wanted.size());
  bool by_name = true;
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    const auto it = std::find(table.names.begin(), table.names.end(), wanted[i]);
    if (it == table.names.end()) {
      by_name = false;
      break;
    }
    index[i] = static_cast<std::size_t>(it - table.names.begin());
  }
  if (!by_name) {
    if (table.names.size() != wanted.size()) {
      throw nrt::DataError("dimension mismatch: model expects " +
                           std::to_string(wanted.size()) + " features, data has " +
                           std::to_string(table.names.size()) + " columns");
    }
    index.resize(wanted.size());
    for (std::size_t i = 0; i < wanted.size(); ++i) index[i] = i;
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(table.rows.size());
  for (const std::vector<double>& row : table.rows) {
    std::vector<double> selected(wanted.size());
    for (std::size_t i = 0; i < wanted.size(); ++i) selected[i] = row[index[i]];
    rows.push_back(std::move(selected));
  }
  return rows;
}

std::vector<double> response_column(const nrt::FeatureTable& table,
                                    const std::string& name) {
  const auto it = std::find(table.names.begin(), table.names.end(), name);
  if (it == table.names.end()) {
    throw nrt::DataError("response column '" + name + "' not found");
  }
  const std::size_t idx = static_cast<std::size_t>(it - table.names.begin());
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (const std::vector<double>& row : table.rows) out.push_back(row[idx]);
  return out;
}

void print_training_log(const nrt::NrtModel& model) {
  std::cout << "node log:\n";
  for (const nrt::TrainingLogEntry& e : model.training_log) {
    std::cout << "  node " << e.node_id << ": n=" << e.samples
              << " t=" << fmt(e.threshold) << " objective=" << fmt(e.objective)
              << " class_loss=" << fmt(e.class_loss) << " penalty=" << fmt(e.penalty)
              << '\n';
  }
}

int cmd_train(const TrainFlags& flags) {
  nrt::TrainConfig cfg;
  try {
    cfg = config_from_flags(flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  }

  return run_guarded([&]() {
    const nrt::LoadedCsv train = nrt::load_csv(flags.data, flags.response_col);
    std::cout << "loaded " << train.dataset.size() << " samples (dim "
              << train.dataset.dim << ") from " << flags.data << '\n';

    std::optional<nrt::LoadedCsv> dev;
    if (!flags.dev.empty()) {
      dev = nrt::load_csv(flags.dev, flags.response_col);
      std::cout << "loaded " << dev->dataset.size() << " dev samples from "
                << flags.dev << '\n';
    }
    const nrt::Dataset* dev_ptr = dev ? &dev->dataset : nullptr;

    nrt::NrtModel chosen;
    if (cfg.num_seeds == 1) {
      chosen = nrt::build_tree(train.dataset, dev_ptr, cfg);
    } else {
      // Train one model per seed and keep the median-MAE one (dev MAE when a
      // dev set exists, training MAE otherwise).
      struct SeedRun {
        double mae = 0.0;
        std::uint64_t seed = 0;
        nrt::NrtModel model;
      };
      std::vector<SeedRun> runs;
      const nrt::Dataset& eval_set = dev_ptr ? *dev_ptr : train.dataset;
      for (std::size_t k = 0; k < cfg.num_seeds; ++k) {
        nrt::TrainConfig seed_cfg = cfg;
        seed_cfg.seed = cfg.seed + k;
        SeedRun run;
        run.seed = seed_cfg.seed;
        run.model = nrt::build_tree(train.dataset, dev_ptr, seed_cfg);
        run.mae = nrt::mae(nrt::predict_batch(run.model, eval_set, nrt::PredictMode::soft),
                           eval_set.responses());
        std::cout << "seed " << run.seed << ": " << (dev_ptr ? "dev" : "train")
                  << " MAE " << fmt(run.mae) << '\n';
        runs.push_back(std::move(run));
      }
      std::stable_sort(runs.begin(), runs.end(),
                       [](const SeedRun& a, const SeedRun& b) { return a.mae < b.mae; });
      SeedRun& median = runs[(runs.size() - 1) / 2];
      std::cout << "selected seed " << median.seed << " (median MAE "
                << fmt(median.mae) << ")\n";
      chosen = std::move(median.model);
    }

    print_training_log(chosen);
    std::cout << "tree: depth " << chosen.depth << ", " << chosen.leaf_count
              << " leaves\n";
    nrt::save_model(flags.out, chosen, train.feature_names, train.response_name);
    std::cout << "model written to " << flags.out << '\n';
  });
}

struct PredictFlags {
  std::string model;
  std::string data;
  std::string mode = "soft";
  std::string out;
};

int cmd_predict(const PredictFlags& flags) {
  return run_guarded([&]() {
    const nrt::LoadedModel loaded = nrt::load_model(flags.model);
    const nrt::FeatureTable table = nrt::load_feature_csv(flags.data);
    const std::vector<std::vector<double>> xs =
        select_features(table, loaded.feature_names);

    std::ofstream out(flags.out);
    if (!out) throw nrt::DataError("cannot write '" + flags.out + "'");
    if (flags.mode == "hard") {
      out << "prediction,leaf_index\n";
      for (const std::vector<double>& x : xs) {
        const nrt::HardPrediction hard = nrt::predict_hard(loaded.model, x);
        out << fmt17(hard.value) << ',' << hard.leaf_index << '\n';
      }
    } else {
      const std::vector<double> preds =
          nrt::predict_batch(loaded.model, xs, nrt::PredictMode::soft);
      out << "prediction\n";
      for (double p : preds) out << fmt17(p) << '\n';
    }
    std::cout << "wrote " << xs.size() << " predictions to " << flags.out << '\n';
  });
}

struct EvaluateFlags {
  std::string model;
  std::string data;
  std::string mode = "soft";
  std::string compare_predictions;
};

int cmd_evaluate(const EvaluateFlags& flags) {
  return run_guarded([&]() {
    const nrt::LoadedModel loaded = nrt::load_model(flags.model);
    const nrt::FeatureTable table = nrt::load_feature_csv(flags.data);
    const std::vector<std::vector<double>> xs =
        select_features(table, loaded.feature_names);
    const std::vector<double> truth = response_column(table, loaded.response_name);

    const nrt::PredictMode mode =
        flags.mode == "hard" ? nrt::PredictMode::hard : nrt::PredictMode::soft;
    const std::vector<double> preds = nrt::predict_batch(loaded.model, xs, mode);
    const nrt::EvalReport report = nrt::evaluate(preds, truth);
    std::cout << "n " << report.n << '\n';
    std::cout << "mae " << fmt17(report.mae) << '\n';
    std::cout << "rmse " << fmt17(report.rmse) << '\n';

    if (!flags.compare_predictions.empty()) {
      const nrt::FeatureTable other = nrt::load_feature_csv(flags.compare_predictions);
      if (other.rows.size() != truth.size()) {
        throw nrt::DataError("compare predictions: expected " +
                             std::to_string(truth.size()) + " rows, got " +
                             std::to_string(other.rows.size()));
      }
      std::size_t col = 0;
      const auto it = std::find(other.names.begin(), other.names.end(), "prediction");
      if (it != other.names.end()) {
        col = static_cast<std::size_t>(it - other.names.begin());
      }
      std::vector<double> other_errors, model_errors;
      for (std::size_t i = 0; i < truth.size(); ++i) {
        other_errors.push_back(std::fabs(other.rows[i][col] - truth[i]));
        model_errors.push_back(std::fabs(preds[i] - truth[i]));
      }
      const nrt::TTestResult t = nrt::paired_t_test(other_errors, model_errors);
      std::cout << "paired t-test vs " << flags.compare_predictions << ": t="
                << fmt17(t.t) << " df=" << t.df << " p=" << fmt17(t.p)
                << " (one-sided: this model's errors are smaller)\n";
    }
  });
}

struct AnalyzeFlags {
  std::string model;
  std::string data;
  std::string json_out;
};

void print_analyze_node(const nrt::TreeNode& node,
                        const std::map<int, nrt::NodeErrorEntry>& entries,
                        int depth) {
  const nrt::NodeErrorEntry& e = entries.at(node.id);
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.leaf) {
    std::cout << indent << "leaf " << node.id << ": bin=(" << fmt(node.low) << ", "
              << fmt(node.high) << "] rep=" << fmt(node.representative)
              << " n=" << e.count << " mae=" << fmt(e.mae) << '\n';
    return;
  }
  std::cout << indent << "node " << node.id << ": t=" << fmt17(node.threshold)
            << " n=" << e.count << " mae=" << fmt(e.mae) << '\n';
  print_analyze_node(*node.left, entries, depth + 1);
  print_analyze_node(*node.right, entries, depth + 1);
}

json analyze_json_node(const nrt::TreeNode& node,
                       const std::map<int, nrt::NodeErrorEntry>& entries) {
  const nrt::NodeErrorEntry& e = entries.at(node.id);
  json j;
  j["id"] = node.id;
  j["count"] = e.count;
  j["mae"] = e.mae;
  j["low"] = node.low;
  j["high"] = node.high;
  if (node.leaf) {
    j["kind"] = "leaf";
    j["representative"] = node.representative;
  } else {
    j["kind"] = "internal";
    j["threshold"] = node.threshold;
    j["left"] = analyze_json_node(*node.left, entries);
    j["right"] = analyze_json_node(*node.right, entries);
  }
  return j;
}

int cmd_analyze(const AnalyzeFlags& flags) {
  return run_guarded([&]() {
    const nrt::LoadedModel loaded = nrt::load_model(flags.model);
    const nrt::FeatureTable table = nrt::load_feature_csv(flags.data);
    const std::vector<std::vector<double>> xs =
        select_features(table, loaded.feature_names);
    const std::vector<double> truth = response_column(table, loaded.response_name);

    nrt::Dataset data;
    data.dim = loaded.model.dim;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      data.samples.push_back(nrt::Sample{xs[i], truth[i]});
    }
    const nrt::NodeErrorReport report = nrt::node_error_report(loaded.model, data);
    std::map<int, nrt::NodeErrorEntry> by_id;
    for (const nrt::NodeErrorEntry& e : report.entries) by_id[e.node_id] = e;

    print_analyze_node(*loaded.model.root, by_id, 0);
    std::cout << "overall mae " << fmt17(report.overall_mae) << '\n';

    if (!flags.json_out.empty()) {
      json j;
      j["overall_mae"] = report.overall_mae;
      j["n"] = data.size();
      j["tree"] = analyze_json_node(*loaded.model.root, by_id);
      std::ofstream out(flags.json_out);
      if (!out) throw nrt::DataError("cannot write '" + flags.json_out + "'");
      out << j.dump(2) << '\n';
      std::cout << "report written to " << flags.json_out << '\n';
    }
  });
}

struct SynthFlags {
  std::size_t regimes = 2;
  std::size_t n = 100;
  std::size_t dim = 2;
  double noise = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_synth(const SynthFlags& flags) {
  nrt::SyntheticSpec spec;
  try {
    spec = nrt::default_synthetic_spec(flags.regimes, flags.n, flags.dim, flags.noise,
                                       flags.seed);
    spec.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  }

  return run_guarded([&]() {
    const nrt::SyntheticData synth = nrt::generate_synthetic(spec);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < flags.dim; ++j) names.push_back("f" + std::to_string(j));
    nrt::save_csv(flags.out, synth.dataset, names, "y");

    json truth;
    truth["seed"] = flags.seed;
    truth["regimes"] = flags.regimes;
    truth["true_thresholds"] = synth.true_thresholds;
    truth["regime_means"] = synth.regime_means;
    truth["regime_counts"] = synth.regime_counts;
    json ranges = json::array();
    for (const auto& [lo, hi] : spec.response_ranges) ranges.push_back({lo, hi});
    truth["response_ranges"] = ranges;
    truth["regime_centers"] = spec.regime_centers;
    truth["feature_noise"] = spec.feature_noise;

    const std::string truth_path = flags.out + ".truth.json";
    std::ofstream out(truth_path);
    if (!out) throw nrt::DataError("cannot write '" + truth_path + "'");
    out << truth.dump(2) << '\n';
    std::cout << "wrote " << synth.dataset.size() << " rows to " << flags.out
              << " and ground truth to " << truth_path << '\n';
  });
}

struct CompareFlags {
  std::string data;
  std::string response_col;
  std::string baselines = "cart,mlp,nrt-scan";
  std::size_t seeds = 1;
};

const std::vector<std::string> kKnownBaselines = {
    "cart", "mlp", "nrt-scan", "nrt-gradient", "nrt-linear"};

// Fixed comparison profile; every method sees the same per-seed split.
struct CompareProfile {
  std::uint64_t base_seed = 1;
  nrt::SplitFractions fractions{0.6, 0.2, 0.2};
  std::size_t strata = 10;
  std::size_t cart_max_depth = 8;
  std::size_t cart_min_leaf = 5;
  std::vector<std::size_t> mlp_hidden{32};
  double mlp_lr = 0.01;
  std::size_t mlp_epochs = 300;
};

nrt::TrainConfig compare_nrt_config(const std::string& method, std::uint64_t seed) {
  nrt::TrainConfig cfg;
  cfg.layer_sizes = {16};
  cfg.learning_rate = 0.005;
  cfg.epochs_per_node = 100;
  cfg.scan_candidate_cap = 24;
  cfg.max_depth = 4;
  cfg.min_node_size = 8;
  cfg.coord_descent_rounds = 3;
  cfg.seed = seed;
  if (method == "nrt-gradient") {
    cfg.method = nrt::SplitMethod::gradient;
    cfg.penalty = nrt::Penalty::median;
  } else if (method == "nrt-linear") {
    cfg.classifier_kind = nrt::ClassifierKind::linear_margin;
    cfg.learning_rate = 0.05;
    cfg.epochs_per_node = 200;
  }
  cfg.validate();
  return cfg;
}

int cmd_compare(const CompareFlags& flags) {
  std::vector<std::string> methods;
  {
    std::stringstream ss(flags.baselines);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (std::find(kKnownBaselines.begin(), kKnownBaselines.end(), name) ==
          kKnownBaselines.end()) {
        std::cerr << "error: unknown baseline '" << name << "'\n";
        return kExitFlags;
      }
      methods.push_back(name);
    }
  }
  if (methods.empty()) {
    std::cerr << "error: no baselines selected\n";
    return kExitFlags;
  }
  if (flags.seeds == 0) {
    std::cerr << "error: --seeds must be at least 1\n";
    return kExitFlags;
  }

  return run_guarded([&]() {
    const CompareProfile profile;
    const nrt::LoadedCsv loaded = nrt::load_csv(flags.data, flags.response_col);

    std::map<std::string, std::vector<double>> pooled_errors;
    std::map<std::string, std::vector<nrt::EvalReport>> reports;

    for (std::size_t k = 0; k < flags.seeds; ++k) {
      const std::uint64_t seed = profile.base_seed + k;
      const nrt::StratifiedSplit split =
          nrt::stratified_split(loaded.dataset, profile.fractions, profile.strata, seed);
      const std::vector<double> truth = split.test.responses();

      for (const std::string& method : methods) {
        std::vector<double> preds;
        if (method == "cart") {
          const nrt::CartModel cart =
              nrt::cart_fit(split.train, profile.cart_max_depth, profile.cart_min_leaf);
          for (const nrt::Sample& s : split.test.samples) {
            preds.push_back(nrt::cart_predict(cart, s.features));
          }
        } else if (method == "mlp") {
          const nrt::MlpRegressor mlp = nrt::mlp_fit(
              split.train, profile.mlp_hidden, profile.mlp_lr, profile.mlp_epochs, seed);
          for (const nrt::Sample& s : split.test.samples) {
            preds.push_back(nrt::mlp_predict(mlp, s.features));
          }
        } else {
          const nrt::TrainConfig cfg = compare_nrt_config(method, seed);
          const nrt::NrtModel model = nrt::build_tree(split.train, &split.dev, cfg);
          preds = nrt::predict_batch(model, split.test, nrt::PredictMode::soft);
        }
        const nrt::EvalReport report = nrt::evaluate(preds, truth);
        reports[method].push_back(report);
        auto& pool = pooled_errors[method];
        pool.insert(pool.end(), report.per_sample_abs_errors.begin(),
                    report.per_sample_abs_errors.end());
      }
    }

    std::cout << "method        mae_mean  mae_std   rmse_mean rmse_std\n";
    for (const std::string& method : methods) {
      double mae_mean = 0, rmse_mean = 0;
      for (const nrt::EvalReport& r : reports[method]) {
        mae_mean += r.mae;
        rmse_mean += r.rmse;
      }
      mae_mean /= reports[method].size();
      rmse_mean /= reports[method].size();
      double mae_ss = 0, rmse_ss = 0;
      for (const nrt::EvalReport& r : reports[method]) {
        mae_ss += (r.mae - mae_mean) * (r.mae - mae_mean);
        rmse_ss += (r.rmse - rmse_mean) * (r.rmse - rmse_mean);
      }
      const std::size_t m = reports[method].size();
      const double mae_std = m > 1 ? std::sqrt(mae_ss / (m - 1)) : 0.0;
      const double rmse_std = m > 1 ? std::sqrt(rmse_ss / (m - 1)) : 0.0;
      std::printf("%-13s %-9s %-9s %-9s %-9s\n", method.c_str(), fmt(mae_mean).c_str(),
                  fmt(mae_std).c_str(), fmt(rmse_mean).c_str(), fmt(rmse_std).c_str());
    }

    // Pairwise significance: is the NRT variant's error smaller?
    for (const std::string& method : methods) {
      if (method.rfind("nrt-", 0) != 0) continue;
      for (const std::string& other : methods) {
        if (other == method) continue;
        try {
          const nrt::TTestResult t =
              nrt::paired_t_test(pooled_errors[other], pooled_errors[method]);
          std::cout << method << " vs " << other << ": t=" << fmt(t.t)
                    << " df=" << t.df << " p=" << fmt17(t.p) << '\n';
        } catch (const nrt::DegenerateTestError&) {
          std::cout << method << " vs " << other << ": degenerate (zero variance)\n";
        }
      }
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regression-via-classification trees: response-variable "
               "partitioning with per-node trainable classifiers"};
  app.require_subcommand(1);

  TrainFlags train_flags;
  CLI::App* train = app.add_subcommand("train", "Train a model from a CSV");
  train->add_option("--data", train_flags.data, "Training CSV")->required();
  train->add_option("--response-col", train_flags.response_col, "Response column name")
      ->required();
  train->add_option("--method", train_flags.method, "scan|gradient");
  train->add_option("--penalty", train_flags.penalty, "entropy|gini|median");
  train->add_option("--lambda", train_flags.lambda,
                    "Weight of the classification loss (0, 1)");
  train->add_option("--beta", train_flags.beta, "Label relaxation steepness");
  train->add_option("--max-depth", train_flags.max_depth, "Maximum tree depth");
  train->add_option("--min-leaf", train_flags.min_leaf, "Minimum node size");
  train->add_option("--epochs", train_flags.epochs, "Classifier epochs per node");
  train->add_option("--lr", train_flags.lr, "Classifier learning rate");
  train->add_option("--seed", train_flags.seed, "Base RNG seed");
  train->add_option("--seeds", train_flags.seeds,
                    "Number of seeds (keeps the median-MAE model)");
  train->add_option("--dev", train_flags.dev, "Held-out CSV for saturation stopping");
  train->add_option("--out", train_flags.out, "Model output path")->required();

  PredictFlags predict_flags;
  CLI::App* predict = app.add_subcommand("predict", "Predict with a trained model");
  predict->add_option("--model", predict_flags.model, "Model path")->required();
  predict->add_option("--data", predict_flags.data, "Input CSV")->required();
  predict->add_option("--mode", predict_flags.mode, "soft|hard")
      ->check(CLI::IsMember({"soft", "hard"}));
  predict->add_option("--out", predict_flags.out, "Predictions output path")->required();

  EvaluateFlags evaluate_flags;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Report MAE/RMSE on labeled data");
  evaluate->add_option("--model", evaluate_flags.model, "Model path")->required();
  evaluate->add_option("--data", evaluate_flags.data, "Labeled CSV")->required();
  evaluate->add_option("--mode", evaluate_flags.mode, "soft|hard")
      ->check(CLI::IsMember({"soft", "hard"}));
  evaluate->add_option("--compare-predictions", evaluate_flags.compare_predictions,
                       "Predictions CSV to test against (paired t-test)");

  AnalyzeFlags analyze_flags;
  CLI::App* analyze = app.add_subcommand("analyze", "Per-node error breakdown");
  analyze->add_option("--model", analyze_flags.model, "Model path")->required();
  analyze->add_option("--data", analyze_flags.data, "Labeled CSV")->required();
  analyze->add_option("--json-out", analyze_flags.json_out,
                      "Write a machine-readable report here");

  SynthFlags synth_flags;
  CLI::App* synth = app.add_subcommand("synth", "Generate regime-structured data");
  synth->add_option("--regimes", synth_flags.regimes, "Number of response regimes");
  synth->add_option("--n", synth_flags.n, "Number of samples");
  synth->add_option("--dim", synth_flags.dim, "Feature dimension");
  synth->add_option("--noise", synth_flags.noise, "Feature noise sigma");
  synth->add_option("--seed", synth_flags.seed, "RNG seed");
  synth->add_option("--out", synth_flags.out, "CSV output path")->required();

  CompareFlags compare_flags;
  CLI::App* compare = app.add_subcommand("compare", "Train and compare baselines");
  compare->add_option("--data", compare_flags.data, "Labeled CSV")->required();
  compare->add_option("--response-col", compare_flags.response_col,
                      "Response column name")
      ->required();
  compare->add_option("--baselines", compare_flags.baselines,
                      "Comma list: cart,mlp,nrt-scan,nrt-gradient,nrt-linear");
  compare->add_option("--seeds", compare_flags.seeds, "Shared-split seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFlags;
  }

  if (train->parsed()) return cmd_train(train_flags);
  if (predict->parsed()) return cmd_predict(predict_flags);
  if (evaluate->parsed()) return cmd_evaluate(evaluate_flags);
  if (analyze->parsed()) return cmd_analyze(analyze_flags);
  if (synth->parsed()) return cmd_synth(synth_flags);
  if (compare->parsed()) return cmd_compare(compare_flags);
  return kExitFlags;
}
