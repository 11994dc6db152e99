#include "nrt/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nrt/errors.hpp"
#include "nrt/inference.hpp"
#include "nrt/stats.hpp"

namespace nrt {

namespace {

void check_paired(const std::vector<double>& pred, const std::vector<double>& truth) {
  if (pred.size() != truth.size()) {
    throw std::invalid_argument("prediction/truth length mismatch: " +
                                std::to_string(pred.size()) + " vs " +
                                std::to_string(truth.size()));
  }
  if (pred.empty()) throw std::invalid_argument("empty prediction list");
}

}  // namespace

double mae(const std::vector<double>& pred, const std::vector<double>& truth) {
  check_paired(pred, truth);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    total += std::fabs(pred[i] - truth[i]);
  }
  return total / static_cast<double>(pred.size());
}

double rmse(const std::vector<double>& pred, const std::vector<double>& truth) {
  check_paired(pred, truth);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double r = pred[i] - truth[i];
    total += r * r;
  }
  return std::sqrt(total / static_cast<double>(pred.size()));
}

EvalReport evaluate(const std::vector<double>& pred, const std::vector<double>& truth) {
  check_paired(pred, truth);
  EvalReport report;
  report.n = pred.size();
  report.per_sample_abs_errors.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    report.per_sample_abs_errors.push_back(std::fabs(pred[i] - truth[i]));
  }
  report.mae = mae(pred, truth);
  report.rmse = rmse(pred, truth);
  return report;
}

TTestResult paired_t_test(const std::vector<double>& errors_a,
                          const std::vector<double>& errors_b) {
  if (errors_a.size() != errors_b.size()) {
    throw std::invalid_argument("paired_t_test: length mismatch");
  }
  const std::size_t n = errors_a.size();
  if (n < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");

  double mean_d = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_d += errors_a[i] - errors_b[i];
  mean_d /= static_cast<double>(n);

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (errors_a[i] - errors_b[i]) - mean_d;
    ss += r * r;
  }
  const double var = ss / static_cast<double>(n - 1);
  if (var <= 0.0) {
    throw DegenerateTestError("paired_t_test: zero-variance differences");
  }

  TTestResult result;
  result.df = n - 1;
  result.t = mean_d / std::sqrt(var / static_cast<double>(n));
  // One-sided: small p supports b's errors being smaller (positive t).
  result.p = 1.0 - student_t_cdf(result.t, static_cast<double>(result.df));
  return result;
}

MultiSeedSummary multi_seed_eval(const SeedRunner& run, const Dataset& train,
                                 const Dataset* dev, const Dataset& test,
                                 std::size_t num_seeds, std::uint64_t seed0) {
  if (num_seeds == 0) throw std::invalid_argument("multi_seed_eval: num_seeds must be >= 1");
  if (test.empty()) throw std::invalid_argument("multi_seed_eval: empty test set");

  const std::vector<double> truth = test.responses();
  MultiSeedSummary summary;
  summary.per_seed.reserve(num_seeds);
  for (std::size_t k = 0; k < num_seeds; ++k) {
    const std::uint64_t seed = seed0 + k;
    std::vector<double> preds;
    try {
      preds = run(train, dev, test, seed);
    } catch (const DivergedError& e) {
      throw DivergedError("seed " + std::to_string(seed) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("seed " + std::to_string(seed) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("seed " + std::to_string(seed) + ": " + e.what());
    }
    summary.per_seed.push_back(evaluate(preds, truth));
  }

  auto moments = [&](auto metric) {
    double mean = 0.0;
    bool all_equal = true;
    for (const EvalReport& r : summary.per_seed) {
      mean += metric(r);
      all_equal = all_equal && metric(r) == metric(summary.per_seed.front());
    }
    mean /= static_cast<double>(num_seeds);
    // Identical runs have exactly zero spread; skip the subtraction noise.
    if (all_equal) return std::pair<double, double>{metric(summary.per_seed.front()), 0.0};
    double ss = 0.0;
    for (const EvalReport& r : summary.per_seed) {
      const double d = metric(r) - mean;
      ss += d * d;
    }
    const double std =
        num_seeds > 1 ? std::sqrt(ss / static_cast<double>(num_seeds - 1)) : 0.0;
    return std::pair<double, double>{mean, std};
  };
  std::tie(summary.mae_mean, summary.mae_std) =
      moments([](const EvalReport& r) { return r.mae; });
  std::tie(summary.rmse_mean, summary.rmse_std) =
      moments([](const EvalReport& r) { return r.rmse; });
  return summary;
}

namespace {

void node_errors(const TreeNode& node, int depth, const Dataset& data,
                 const std::vector<double>& abs_err, std::vector<std::size_t> idx,
                 std::vector<NodeErrorEntry>& out) {
  NodeErrorEntry entry;
  entry.node_id = node.id;
  entry.depth = depth;
  entry.leaf = node.leaf;
  entry.threshold = node.threshold;
  entry.low = node.low;
  entry.high = node.high;
  entry.count = idx.size();
  double total = 0.0;
  for (std::size_t i : idx) total += abs_err[i];
  entry.mae = idx.empty() ? 0.0 : total / static_cast<double>(idx.size());
  out.push_back(entry);

  if (node.leaf) return;
  std::vector<std::size_t> left_idx, right_idx;
  for (std::size_t i : idx) {
    if (data.samples[i].response < node.threshold) {
      left_idx.push_back(i);
    } else {
      right_idx.push_back(i);
    }
  }
  node_errors(*node.left, depth + 1, data, abs_err, std::move(left_idx), out);
  node_errors(*node.right, depth + 1, data, abs_err, std::move(right_idx), out);
}

}  // namespace

NodeErrorReport node_error_report(const NrtModel& model, const Dataset& data) {
  if (!model.root) throw std::invalid_argument("node_error_report: empty model");
  if (data.empty()) throw std::invalid_argument("node_error_report: empty dataset");
  data.validate();

  std::vector<double> abs_err(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    abs_err[i] =
        std::fabs(predict_soft(model, data.samples[i].features) - data.samples[i].response);
  }

  std::vector<std::size_t> all(data.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  NodeErrorReport report;
  node_errors(*model.root, 0, data, abs_err, std::move(all), report.entries);
  std::sort(report.entries.begin(), report.entries.end(),
            [](const NodeErrorEntry& a, const NodeErrorEntry& b) {
              return a.node_id < b.node_id;
            });
  report.overall_mae = report.entries.front().mae;  // root has id 0
  return report;
}

}  // namespace nrt
