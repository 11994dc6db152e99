#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nrt/dataset.hpp"
#include "nrt/tree.hpp"

namespace nrt {

struct EvalReport {
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n = 0;
  std::vector<double> per_sample_abs_errors;
};

double mae(const std::vector<double>& pred, const std::vector<double>& truth);
double rmse(const std::vector<double>& pred, const std::vector<double>& truth);
EvalReport evaluate(const std::vector<double>& pred, const std::vector<double>& truth);

struct TTestResult {
  double t = 0.0;
  std::size_t df = 0;
  double p = 1.0;
};

// Paired t statistic on d_i = a_i - b_i with a one-sided p-value for the
// hypothesis that b's values are smaller. Throws DegenerateTestError when
// the differences have zero variance.
TTestResult paired_t_test(const std::vector<double>& errors_a,
                          const std::vector<double>& errors_b);

// One full train+predict pipeline run; returns predictions for test.
using SeedRunner = std::function<std::vector<double>(
    const Dataset& train, const Dataset* dev, const Dataset& test, std::uint64_t seed)>;

struct MultiSeedSummary {
  double mae_mean = 0.0;
  double mae_std = 0.0;
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  std::vector<EvalReport> per_seed;
};

// Runs the pipeline with seeds seed0 .. seed0 + num_seeds - 1 and aggregates
// MAE/RMSE (sample standard deviation; zero for a single seed). Errors from
// a run are rethrown with the seed index prepended.
MultiSeedSummary multi_seed_eval(const SeedRunner& run, const Dataset& train,
                                 const Dataset* dev, const Dataset& test,
                                 std::size_t num_seeds, std::uint64_t seed0);

// Per-node regression error: every sample is routed by its *true* response
// (y < threshold goes left) and each node aggregates the MAE of the soft
// predictions for the samples whose response falls in its interval.
struct NodeErrorEntry {
  int node_id = 0;
  int depth = 0;
  bool leaf = true;
  double threshold = 0.0;  // internal nodes only
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;
  double mae = 0.0;
};

struct NodeErrorReport {
  std::vector<NodeErrorEntry> entries;  // sorted by node id
  double overall_mae = 0.0;             // root entry's MAE
};

NodeErrorReport node_error_report(const NrtModel& model, const Dataset& data);

}  // namespace nrt
