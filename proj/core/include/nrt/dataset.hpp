#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace nrt {

struct Sample {
  std::vector<double> features;
  double response = 0.0;
};

struct Dataset {
  std::vector<Sample> samples;
  std::size_t dim = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  std::vector<double> responses() const;
  double min_response() const;
  double max_response() const;

  // Checks dimensions and finiteness; throws std::invalid_argument.
  void validate() const;
};

// Response bin (low, high]; representative is the value the bin predicts.
struct Bin {
  double low = 0.0;
  double high = 0.0;
  double representative = 0.0;
  std::size_t count = 0;
};

// Index of the bin whose (low, high] interval contains y. bins must be
// sorted, disjoint and contiguous; out-of-range values clamp to the
// first/last bin. Throws std::invalid_argument on an empty list.
std::size_t partition_of(const std::vector<Bin>& bins, double y);

// Training split: y < t goes left, y >= t goes right; order preserved.
std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double t);

}  // namespace nrt
