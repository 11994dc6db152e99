#include "nrt/config.hpp"

#include <stdexcept>

namespace nrt {

std::string to_string(SplitMethod m) {
  return m == SplitMethod::scan ? "scan" : "gradient";
}

std::string to_string(Penalty p) {
  switch (p) {
    case Penalty::entropy: return "entropy";
    case Penalty::gini: return "gini";
    case Penalty::median: return "median";
  }
  return "entropy";
}

std::string to_string(ClassifierKind k) {
  return k == ClassifierKind::neural ? "neural" : "linear_margin";
}

std::string to_string(LeafValue v) {
  return v == LeafValue::mean ? "mean" : "midpoint";
}

SplitMethod split_method_from_string(const std::string& s) {
  if (s == "scan") return SplitMethod::scan;
  if (s == "gradient") return SplitMethod::gradient;
  throw std::invalid_argument("unknown method '" + s + "' (scan|gradient)");
}

Penalty penalty_from_string(const std::string& s) {
  if (s == "entropy") return Penalty::entropy;
  if (s == "gini") return Penalty::gini;
  if (s == "median") return Penalty::median;
  throw std::invalid_argument("unknown penalty '" + s + "' (entropy|gini|median)");
}

ClassifierKind classifier_kind_from_string(const std::string& s) {
  if (s == "neural") return ClassifierKind::neural;
  if (s == "linear_margin") return ClassifierKind::linear_margin;
  throw std::invalid_argument("unknown classifier kind '" + s +
                              "' (neural|linear_margin)");
}

LeafValue leaf_value_from_string(const std::string& s) {
  if (s == "mean") return LeafValue::mean;
  if (s == "midpoint") return LeafValue::midpoint;
  throw std::invalid_argument("unknown leaf value '" + s + "' (mean|midpoint)");
}

void TrainConfig::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("lambda must lie in the open interval (0, 1)");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  if (epochs_per_node == 0) {
    throw std::invalid_argument("epochs_per_node must be at least 1");
  }
  if (coord_descent_rounds == 0) {
    throw std::invalid_argument("coord_descent_rounds must be at least 1");
  }
  if (threshold_lr < 0.0) {
    throw std::invalid_argument("threshold_lr must be non-negative");
  }
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  if (min_node_size < 2) {
    throw std::invalid_argument("min_node_size must be at least 2");
  }
  if (purity_epsilon < 0.0) {
    throw std::invalid_argument("purity_epsilon must be non-negative");
  }
  if (dev_saturation_tol < 0.0) {
    throw std::invalid_argument("dev_saturation_tol must be non-negative");
  }
  if (num_seeds == 0) throw std::invalid_argument("num_seeds must be at least 1");
  if (method == SplitMethod::gradient && penalty != Penalty::median) {
    throw std::invalid_argument(
        "the gradient method requires the median penalty (the entropy and gini "
        "penalties are not differentiable in the threshold)");
  }
  if (classifier_kind == ClassifierKind::linear_margin &&
      method != SplitMethod::scan) {
    throw std::invalid_argument("linear_margin classifiers pair with the scan method");
  }
  for (std::size_t h : layer_sizes) {
    if (h == 0) throw std::invalid_argument("layer_sizes entries must be positive");
  }
}

}  // namespace nrt
