#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nrt/dataset.hpp"

namespace nrt {

struct LoadedCsv {
  Dataset dataset;
  std::vector<std::string> feature_names;  // header order, response excluded
  std::string response_name;
};

// Strict numeric CSV with a header row. Features are all non-response
// columns in header order. Throws DataError with the file line and column
// on parse failures, a missing response column, or an empty file.
LoadedCsv load_csv(const std::string& path, const std::string& response_col);

// Feature-only view of a CSV (used for prediction inputs): every column
// parsed as a double, names preserved.
struct FeatureTable {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> names;
};
FeatureTable load_feature_csv(const std::string& path);

void save_csv(const std::string& path, const Dataset& d,
              const std::vector<std::string>& feature_names,
              const std::string& response_name);

struct SplitFractions {
  double train = 0.7;
  double dev = 0.0;
  double test = 0.3;
};

struct StratifiedSplit {
  Dataset train;
  Dataset dev;
  Dataset test;
  // True when a stratum smaller than 3 forced the fallback to one merged
  // stratum (only possible when all three fractions are positive).
  bool merged_strata = false;
};

// Buckets samples into num_strata response-quantile strata, shuffles each
// with the seeded generator, and splits it by the fractions (non-negative,
// summing to 1). Per-stratum counts are within one sample of the requested
// proportions; no sample appears twice.
StratifiedSplit stratified_split(const Dataset& d, SplitFractions fractions,
                                 std::size_t num_strata, std::uint64_t seed);

// Regime-structured generator: a sample draws its regime (by response-range
// width or uniformly), a response uniform in that regime's range, and
// features at the regime center plus isotropic gaussian noise.
struct SyntheticSpec {
  std::size_t num_regimes = 2;
  std::size_t dim = 2;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::vector<double> true_thresholds;                    // K-1, sorted
  std::vector<std::vector<double>> regime_centers;        // K x dim
  std::vector<double> feature_noise;                      // K, sigma >= 0
  std::vector<std::pair<double, double>> response_ranges; // K, disjoint [lo, hi)
  bool weight_by_range_width = true;

  void validate() const;
};

struct SyntheticData {
  Dataset dataset;
  std::vector<double> true_thresholds;
  std::vector<double> regime_means;  // empirical mean response per regime
  std::vector<std::size_t> regime_counts;
  std::vector<int> regime_of;  // per sample
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Ready-made spec with unit-width-8 ranges separated by gaps of 2, gap
// midpoints as thresholds, and well-separated alternating-sign centers.
SyntheticSpec default_synthetic_spec(std::size_t regimes, std::size_t n,
                                     std::size_t dim, double noise,
                                     std::uint64_t seed);

}  // namespace nrt
