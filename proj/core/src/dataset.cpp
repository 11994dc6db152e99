#include "nrt/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nrt {

std::vector<double> Dataset::responses() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.response);
  return out;
}

double Dataset::min_response() const {
  if (samples.empty()) throw std::invalid_argument("min_response: empty dataset");
  double lo = samples.front().response;
  for (const Sample& s : samples) lo = std::min(lo, s.response);
  return lo;
}

double Dataset::max_response() const {
  if (samples.empty()) throw std::invalid_argument("max_response: empty dataset");
  double hi = samples.front().response;
  for (const Sample& s : samples) hi = std::max(hi, s.response);
  return hi;
}

void Dataset::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (s.features.size() != dim) {
      throw std::invalid_argument("sample " + std::to_string(i) +
                                  ": feature length " +
                                  std::to_string(s.features.size()) +
                                  " != dataset dim " + std::to_string(dim));
    }
    if (!std::isfinite(s.response)) {
      throw std::invalid_argument("sample " + std::to_string(i) +
                                  ": non-finite response");
    }
    for (double f : s.features) {
      if (!std::isfinite(f)) {
        throw std::invalid_argument("sample " + std::to_string(i) +
                                    ": non-finite feature");
      }
    }
  }
}

std::size_t partition_of(const std::vector<Bin>& bins, double y) {
  if (bins.empty()) throw std::invalid_argument("partition_of: empty bin list");
  // First bin whose right edge reaches y; clamps at both ends.
  std::size_t lo = 0, hi = bins.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (bins[mid].high >= y) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::min(lo, bins.size() - 1);
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double t) {
  Dataset left, right;
  left.dim = d.dim;
  right.dim = d.dim;
  for (const Sample& s : d.samples) {
    if (s.response < t) {
      left.samples.push_back(s);
    } else {
      right.samples.push_back(s);
    }
  }
  return {std::move(left), std::move(right)};
}

}  // namespace nrt
