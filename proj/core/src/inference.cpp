#include "nrt/inference.hpp"

#include <stdexcept>
#include <string>

namespace nrt {

namespace {

void check_dim(const NrtModel& model, std::span<const double> x) {
  if (!model.root) throw std::invalid_argument("model has no tree");
  if (x.size() != model.dim) {
    throw std::invalid_argument("input dimension mismatch: expected " +
                                std::to_string(model.dim) + ", got " +
                                std::to_string(x.size()));
  }
}

void walk_posteriors(const TreeNode& node, std::span<const double> x, double prob,
                     std::vector<double>& out) {
  if (node.leaf) {
    out.push_back(prob);
    return;
  }
  const double p_right = forward(node.classifier, x);
  walk_posteriors(*node.left, x, prob * (1.0 - p_right), out);
  walk_posteriors(*node.right, x, prob * p_right, out);
}

double soft_sum(const TreeNode& node, std::span<const double> x, double prob) {
  if (node.leaf) return prob * node.representative;
  const double p_right = forward(node.classifier, x);
  return soft_sum(*node.left, x, prob * (1.0 - p_right)) +
         soft_sum(*node.right, x, prob * p_right);
}

}  // namespace

double predict_soft_node(const TreeNode& node, std::span<const double> x) {
  return soft_sum(node, x, 1.0);
}

std::vector<double> leaf_posteriors(const NrtModel& model, std::span<const double> x) {
  check_dim(model, x);
  std::vector<double> out;
  out.reserve(model.leaf_count);
  walk_posteriors(*model.root, x, 1.0, out);
  return out;
}

double predict_soft(const NrtModel& model, std::span<const double> x) {
  check_dim(model, x);
  return soft_sum(*model.root, x, 1.0);
}

HardPrediction predict_hard(const NrtModel& model, std::span<const double> x) {
  check_dim(model, x);
  const TreeNode* node = model.root.get();
  std::size_t index = 0;
  while (!node->leaf) {
    if (forward(node->classifier, x) >= 0.5) {
      index += count_leaves(*node->left);
      node = node->right.get();
    } else {
      node = node->left.get();
    }
  }
  return HardPrediction{node->representative, index};
}

std::vector<double> predict_batch(const NrtModel& model,
                                  const std::vector<std::vector<double>>& xs,
                                  PredictMode mode) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != model.dim) {
      throw std::invalid_argument(
          "input " + std::to_string(i) + ": dimension mismatch (expected " +
          std::to_string(model.dim) + ", got " + std::to_string(xs[i].size()) + ")");
    }
    out.push_back(mode == PredictMode::soft ? predict_soft(model, xs[i])
                                            : predict_hard(model, xs[i]).value);
  }
  return out;
}

std::vector<double> predict_batch(const NrtModel& model, const Dataset& d,
                                  PredictMode mode) {
  std::vector<double> out;
  out.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.samples[i].features.size() != model.dim) {
      throw std::invalid_argument(
          "input " + std::to_string(i) + ": dimension mismatch (expected " +
          std::to_string(model.dim) + ", got " +
          std::to_string(d.samples[i].features.size()) + ")");
    }
    out.push_back(mode == PredictMode::soft
                      ? predict_soft(model, d.samples[i].features)
                      : predict_hard(model, d.samples[i].features).value);
  }
  return out;
}

}  // namespace nrt
