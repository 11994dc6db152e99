#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "nrt/classifier.hpp"
#include "nrt/dataset.hpp"

namespace nrt {

// Axis-aligned regression tree node: x[feature] < split goes left.
struct CartNode {
  bool leaf = true;
  double value = 0.0;  // mean response of the training samples here
  std::size_t count = 0;
  std::size_t feature = 0;
  double split = 0.0;
  std::unique_ptr<CartNode> left;
  std::unique_ptr<CartNode> right;

  std::unique_ptr<CartNode> clone() const;
};

struct CartModel {
  std::unique_ptr<CartNode> root;
  std::size_t dim = 0;

  CartModel() = default;
  CartModel(const CartModel& other);
  CartModel& operator=(const CartModel& other);
  CartModel(CartModel&&) = default;
  CartModel& operator=(CartModel&&) = default;
};

// Greedy variance-reduction splits over feature midpoints; a node splits
// only when the best children SSE strictly beats its own and both sides
// keep at least min_leaf samples. Ties break toward the lowest feature
// index, then the lowest split value.
CartModel cart_fit(const Dataset& train, std::size_t max_depth, std::size_t min_leaf);

double cart_predict(const CartModel& model, std::span<const double> x);

// Feedforward regressor: same layer stack as the node classifiers but with
// an identity output head, trained on mean squared error with Adam.
struct MlpRegressor {
  NeuralClassifier net;
};

MlpRegressor mlp_fit(const Dataset& train, const std::vector<std::size_t>& hidden_sizes,
                     double learning_rate, std::size_t epochs, std::uint64_t seed);

double mlp_predict(const MlpRegressor& model, std::span<const double> x);

}  // namespace nrt
