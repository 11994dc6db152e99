#include "nrt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nrt/rng.hpp"
#include "nrt/training.hpp"

namespace nrt {

std::unique_ptr<CartNode> CartNode::clone() const {
  auto copy = std::make_unique<CartNode>();
  copy->leaf = leaf;
  copy->value = value;
  copy->count = count;
  copy->feature = feature;
  copy->split = split;
  if (left) copy->left = left->clone();
  if (right) copy->right = right->clone();
  return copy;
}

CartModel::CartModel(const CartModel& other)
    : root(other.root ? other.root->clone() : nullptr), dim(other.dim) {}

CartModel& CartModel::operator=(const CartModel& other) {
  if (this != &other) {
    root = other.root ? other.root->clone() : nullptr;
    dim = other.dim;
  }
  return *this;
}

namespace {

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double value = 0.0;
  double children_sse = 0.0;
};

double subset_mean(const Dataset& d, const std::vector<std::size_t>& idx) {
  double sum = 0.0;
  for (std::size_t i : idx) sum += d.samples[i].response;
  return sum / static_cast<double>(idx.size());
}

double subset_sse(const Dataset& d, const std::vector<std::size_t>& idx) {
  const double mean = subset_mean(d, idx);
  double sse = 0.0;
  for (std::size_t i : idx) {
    const double r = d.samples[i].response - mean;
    sse += r * r;
  }
  return sse;
}

// Best weighted-SSE split over midpoints of consecutive distinct feature
// values. Ties break toward the lower feature index, then the lower value.
SplitChoice best_split(const Dataset& d, const std::vector<std::size_t>& idx,
                       std::size_t min_leaf) {
  SplitChoice best;
  const std::size_t n = idx.size();
  std::vector<std::pair<double, double>> pairs(n);  // (feature value, response)

  for (std::size_t f = 0; f < d.dim; ++f) {
    for (std::size_t k = 0; k < n; ++k) {
      const Sample& s = d.samples[idx[k]];
      pairs[k] = {s.features[f], s.response};
    }
    std::sort(pairs.begin(), pairs.end());

    // Prefix sums over the sorted order.
    double left_sum = 0.0, left_sq = 0.0;
    double total_sum = 0.0, total_sq = 0.0;
    for (const auto& [x, y] : pairs) {
      total_sum += y;
      total_sq += y * y;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
      left_sum += pairs[k].second;
      left_sq += pairs[k].second * pairs[k].second;
      if (pairs[k].first == pairs[k + 1].first) continue;  // no boundary here
      const std::size_t nl = k + 1;
      const std::size_t nr = n - nl;
      if (nl < min_leaf || nr < min_leaf) continue;
      const double right_sum = total_sum - left_sum;
      const double right_sq = total_sq - left_sq;
      const double sse = (left_sq - left_sum * left_sum / static_cast<double>(nl)) +
                         (right_sq - right_sum * right_sum / static_cast<double>(nr));
      const double split = 0.5 * (pairs[k].first + pairs[k + 1].first);
      const bool better =
          !best.found || sse < best.children_sse ||
          (sse == best.children_sse &&
           (f < best.feature || (f == best.feature && split < best.value)));
      if (better) {
        best.found = true;
        best.feature = f;
        best.value = split;
        best.children_sse = sse;
      }
    }
  }
  return best;
}

std::unique_ptr<CartNode> build_cart(const Dataset& d, std::vector<std::size_t> idx,
                                     std::size_t depth, std::size_t max_depth,
                                     std::size_t min_leaf) {
  auto node = std::make_unique<CartNode>();
  node->count = idx.size();
  node->value = subset_mean(d, idx);
  if (depth >= max_depth || idx.size() < 2 * min_leaf) return node;

  const double parent_sse = subset_sse(d, idx);
  const SplitChoice choice = best_split(d, idx, min_leaf);
  // Split only on a strict improvement; guards against pure nodes and
  // cancellation noise in the prefix sums.
  if (!choice.found || !(choice.children_sse < parent_sse * (1.0 - 1e-12))) {
    return node;
  }

  std::vector<std::size_t> left_idx, right_idx;
  for (std::size_t i : idx) {
    if (d.samples[i].features[choice.feature] < choice.value) {
      left_idx.push_back(i);
    } else {
      right_idx.push_back(i);
    }
  }
  node->leaf = false;
  node->feature = choice.feature;
  node->split = choice.value;
  node->left = build_cart(d, std::move(left_idx), depth + 1, max_depth, min_leaf);
  node->right = build_cart(d, std::move(right_idx), depth + 1, max_depth, min_leaf);
  return node;
}

}  // namespace

CartModel cart_fit(const Dataset& train, std::size_t max_depth, std::size_t min_leaf) {
  train.validate();
  if (train.empty()) throw std::invalid_argument("cart_fit: empty training set");
  if (min_leaf == 0) throw std::invalid_argument("cart_fit: min_leaf must be positive");
  if (train.size() < 2 * min_leaf) {
    throw std::invalid_argument("cart_fit: training set smaller than 2 * min_leaf");
  }
  std::vector<std::size_t> idx(train.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  CartModel model;
  model.dim = train.dim;
  model.root = build_cart(train, std::move(idx), 0, max_depth, min_leaf);
  return model;
}

double cart_predict(const CartModel& model, std::span<const double> x) {
  if (!model.root) throw std::invalid_argument("cart_predict: empty model");
  if (x.size() != model.dim) {
    throw std::invalid_argument("cart_predict: dimension mismatch: expected " +
                                std::to_string(model.dim) + ", got " +
                                std::to_string(x.size()));
  }
  const CartNode* node = model.root.get();
  while (!node->leaf) {
    node = x[node->feature] < node->split ? node->left.get() : node->right.get();
  }
  return node->value;
}

MlpRegressor mlp_fit(const Dataset& train, const std::vector<std::size_t>& hidden_sizes,
                     double learning_rate, std::size_t epochs, std::uint64_t seed) {
  train.validate();
  if (train.empty()) throw std::invalid_argument("mlp_fit: empty training set");
  Rng rng(derive_seed(seed, 0));
  MlpRegressor model{make_classifier(train.dim, hidden_sizes, rng)};

  FitOptions opts;
  opts.loss = LossKind::squared_error;
  opts.optimizer = Optimizer::adam;
  opts.learning_rate = learning_rate;
  opts.epochs = epochs;
  opts.shuffle_seed = derive_seed(seed, 1);
  fit_network(model.net, train, train.responses(), opts);
  return model;
}

double mlp_predict(const MlpRegressor& model, std::span<const double> x) {
  return margin(model.net, x);
}

}  // namespace nrt
