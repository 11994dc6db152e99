#pragma once

#include <span>
#include <vector>

#include "nrt/tree.hpp"

namespace nrt {

enum class PredictMode { soft, hard };

// P(leaf | x) for every leaf, left to right: the product of per-node edge
// probabilities along each root-to-leaf chain, where an internal node
// contributes forward(x) on its right edge and 1 - forward(x) on its left.
// Sums to 1 up to rounding.
std::vector<double> leaf_posteriors(const NrtModel& model, std::span<const double> x);

// Expectation of the leaf representatives under the leaf posteriors.
double predict_soft(const NrtModel& model, std::span<const double> x);

struct HardPrediction {
  double value = 0.0;
  std::size_t leaf_index = 0;  // index into leaves_of / leaf_posteriors order
};

// Greedy routing: descend right iff forward(x) >= 0.5; returns that leaf's
// representative and index.
HardPrediction predict_hard(const NrtModel& model, std::span<const double> x);

// Elementwise prediction, order preserved. A dimension mismatch aborts with
// the offending element index in the message.
std::vector<double> predict_batch(const NrtModel& model,
                                  const std::vector<std::vector<double>>& xs,
                                  PredictMode mode);
std::vector<double> predict_batch(const NrtModel& model, const Dataset& d,
                                  PredictMode mode);

// Subtree variants used internally and by level-wise growth.
double predict_soft_node(const TreeNode& node, std::span<const double> x);

}  // namespace nrt
