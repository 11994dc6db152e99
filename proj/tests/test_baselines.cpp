#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "nrt/nrt.hpp"
#include "support/oracles.hpp"

using namespace nrt;
using oracles::rel_close;

namespace {

// Closed-form least squares on [X | 1] via normal equations with Gaussian
// elimination; test-only oracle.
std::vector<double> least_squares(const Dataset& d) {
  const std::size_t p = d.dim + 1;
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (const Sample& s : d.samples) {
    std::vector<double> row(s.features);
    row.push_back(1.0);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) a[i][j] += row[i] * row[j];
      a[i][p] += row[i] * s.response;
    }
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col || a[col][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= p; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<double> beta(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    beta[i] = a[i][i] != 0.0 ? a[i][p] / a[i][i] : 0.0;
  }
  return beta;
}

Dataset step_function_data(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Dataset d;
  d.dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    d.samples.push_back(Sample{{x}, x > 0.0 ? 1.0 : 0.0});
  }
  return d;
}

double cart_train_mse(const CartModel& model, const Dataset& d) {
  double total = 0.0;
  for (const Sample& s : d.samples) {
    const double r = cart_predict(model, s.features) - s.response;
    total += r * r;
  }
  return total / static_cast<double>(d.size());
}

}  // namespace

TEST_CASE("cart_fit: constant responses collapse to one leaf") {
  Dataset d;
  d.dim = 2;
  for (int i = 0; i < 10; ++i) {
    d.samples.push_back(Sample{{double(i), double(-i)}, 3.25});
  }
  const CartModel model = cart_fit(d, 5, 1);
  CHECK(model.root->leaf);
  CHECK(cart_predict(model, std::vector<double>{99.0, -4.0}) == doctest::Approx(3.25));
}

TEST_CASE("cart_fit: recovers a 1-d step function") {
  const Dataset d = step_function_data(200, 31);
  const CartModel model = cart_fit(d, 6, 1);
  REQUIRE_FALSE(model.root->leaf);
  // Exhaustive split-point oracle: the best root split minimizes SSE, which
  // for a clean step is at the sign change.
  CHECK(std::fabs(model.root->split) < 0.05);
  CHECK(cart_train_mse(model, d) < 1e-12);
  CHECK(cart_predict(model, std::vector<double>{1.0}) == doctest::Approx(1.0));
  CHECK(cart_predict(model, std::vector<double>{-1.0}) == doctest::Approx(0.0));
}

TEST_CASE("cart_fit: max_depth=1 yields at most two leaves") {
  const Dataset d = step_function_data(100, 5);
  const CartModel model = cart_fit(d, 1, 1);
  std::size_t leaves = 0;
  std::function<void(const CartNode&)> walk = [&](const CartNode& n) {
    if (n.leaf) {
      ++leaves;
      return;
    }
    walk(*n.left);
    walk(*n.right);
  };
  walk(*model.root);
  CHECK(leaves <= 2);
}

TEST_CASE("cart: training MSE is non-increasing with depth") {
  Rng rng(17);
  Dataset d;
  d.dim = 2;
  for (int i = 0; i < 150; ++i) {
    const double x0 = rng.uniform(-1, 1), x1 = rng.uniform(-1, 1);
    d.samples.push_back(Sample{{x0, x1}, std::sin(3 * x0) + 0.5 * x1 + 0.1 * rng.gaussian()});
  }
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t depth = 1; depth <= 6; ++depth) {
    const CartModel model = cart_fit(d, depth, 2);
    const double mse = cart_train_mse(model, d);
    CHECK(mse <= prev + 1e-12);
    prev = mse;
  }
}

TEST_CASE("cart leaves partition the training set") {
  Rng rng(23);
  Dataset d;
  d.dim = 2;
  for (int i = 0; i < 80; ++i) {
    d.samples.push_back(Sample{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                               rng.uniform(0, 1)});
  }
  const CartModel model = cart_fit(d, 4, 3);
  // Route every sample; per-leaf counts must add up to n and match count.
  std::map<const CartNode*, std::size_t> routed;
  for (const Sample& s : d.samples) {
    const CartNode* node = model.root.get();
    while (!node->leaf) {
      node = s.features[node->feature] < node->split ? node->left.get()
                                                     : node->right.get();
    }
    routed[node] += 1;
  }
  std::size_t total = 0;
  std::function<void(const CartNode&)> walk = [&](const CartNode& n) {
    if (n.leaf) {
      CHECK(routed[&n] == n.count);
      CHECK(n.count >= 3);  // min_leaf
      total += n.count;
      return;
    }
    walk(*n.left);
    walk(*n.right);
  };
  walk(*model.root);
  CHECK(total == d.size());
}

TEST_CASE("cart errors") {
  Dataset empty;
  empty.dim = 1;
  CHECK_THROWS_AS(cart_fit(empty, 3, 1), std::invalid_argument);
  const Dataset d = step_function_data(10, 1);
  CHECK_THROWS_AS(cart_fit(d, 3, 6), std::invalid_argument);
  const CartModel model = cart_fit(d, 2, 1);
  CHECK_THROWS_AS(cart_predict(model, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("mlp_fit: constant target is absorbed by the bias") {
  Dataset d;
  d.dim = 2;
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    d.samples.push_back(Sample{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, 2.5});
  }
  const MlpRegressor model = mlp_fit(d, {8}, 0.01, 400, 7);
  double mse = 0.0;
  for (const Sample& s : d.samples) {
    const double r = mlp_predict(model, s.features) - s.response;
    mse += r * r;
  }
  mse /= d.size();
  CHECK(mse < 1e-3);
}

TEST_CASE("mlp_fit: linear net reaches the least-squares optimum") {
  Rng rng(13);
  Dataset d;
  d.dim = 2;
  for (int i = 0; i < 60; ++i) {
    const double x0 = rng.uniform(-1, 1), x1 = rng.uniform(-1, 1);
    d.samples.push_back(Sample{{x0, x1}, 1.7 * x0 - 0.4 * x1 + 0.3});
  }
  const MlpRegressor model = mlp_fit(d, {}, 0.02, 3000, 11);

  const std::vector<double> beta = least_squares(d);
  double model_mse = 0.0, ls_mse = 0.0, var = 0.0, mean = 0.0;
  for (const Sample& s : d.samples) mean += s.response;
  mean /= d.size();
  for (const Sample& s : d.samples) {
    const double pred = mlp_predict(model, s.features);
    const double ls = beta[0] * s.features[0] + beta[1] * s.features[1] + beta[2];
    model_mse += (pred - s.response) * (pred - s.response);
    ls_mse += (ls - s.response) * (ls - s.response);
    var += (s.response - mean) * (s.response - mean);
  }
  model_mse /= d.size();
  ls_mse /= d.size();
  var /= d.size();
  // Noiseless linear data: both objectives collapse toward zero.
  CHECK(model_mse < 1e-3 * var);
  CHECK(model_mse <= ls_mse + 1e-6);
}

TEST_CASE("mlp gradient check via the shared loss machinery") {
  Rng rng(19);
  NeuralClassifier net = make_classifier(3, {6}, rng);
  for (Layer& l : net.layers) {
    for (double& b : l.bias) b = rng.uniform(-0.2, 0.2);
  }
  const std::vector<double> x{0.4, -1.1, 0.7};
  const double target = 1.3;
  if (oracles::away_from_kinks(net, x, target, LossKind::squared_error)) {
    const Gradients analytic = backward(net, x, target, LossKind::squared_error);
    const Gradients numeric =
        oracles::finite_diff_gradients(net, x, target, LossKind::squared_error);
    for (std::size_t l = 0; l < analytic.size(); ++l) {
      for (std::size_t i = 0; i < analytic[l].weight.data.size(); ++i) {
        CHECK(rel_close(analytic[l].weight.data[i], numeric[l].weight.data[i],
                        1e-4, 1e-7));
      }
    }
  }
}

TEST_CASE("mlp_predict examples") {
  NeuralClassifier net;
  Layer layer;
  layer.weight = Matrix(1, 1);
  layer.weight.data = {1.0};
  layer.bias = {0.0};
  net.layers.push_back(layer);
  const MlpRegressor identity{net};
  CHECK(mlp_predict(identity, std::vector<double>{3.0}) == 3.0);

  net.layers[0].weight.data = {0.0};
  net.layers[0].bias = {0.75};
  const MlpRegressor biased{net};
  CHECK(mlp_predict(biased, std::vector<double>{123.0}) == 0.75);
}

TEST_CASE("mlp matches an independent matrix arithmetic oracle") {
  Rng rng(29);
  const NeuralClassifier net = make_classifier(3, {4, 2}, rng);
  const std::vector<double> x{0.3, -0.8, 1.2};
  // Hand-rolled forward pass.
  std::vector<double> act(x);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    std::vector<double> next(layer.weight.rows, 0.0);
    for (std::size_t o = 0; o < layer.weight.rows; ++o) {
      double z = layer.bias[o];
      for (std::size_t i = 0; i < layer.weight.cols; ++i) {
        z += layer.weight(o, i) * act[i];
      }
      next[o] = (l + 1 < net.layers.size()) ? std::max(z, 0.0) : z;
    }
    act = std::move(next);
  }
  CHECK(mlp_predict(MlpRegressor{net}, x) == doctest::Approx(act[0]).epsilon(1e-15));
}
