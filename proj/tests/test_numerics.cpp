#include <doctest.h>

#include <cmath>

#include "nrt/nrt.hpp"
#include "support/oracles.hpp"

using namespace nrt;
using oracles::rel_close;

namespace {

NeuralClassifier single_layer(const std::vector<double>& w, double b) {
  NeuralClassifier clf;
  Layer layer;
  layer.weight = Matrix(1, w.size());
  layer.weight.data = w;
  layer.bias = {b};
  clf.layers.push_back(layer);
  return clf;
}

NeuralClassifier random_net(Rng& rng, std::size_t input_dim,
                            const std::vector<std::size_t>& hidden) {
  NeuralClassifier clf = make_classifier(input_dim, hidden, rng);
  // Nudge biases off zero so kinks are unlikely.
  for (Layer& l : clf.layers) {
    for (double& b : l.bias) b = rng.uniform(-0.3, 0.3);
  }
  return clf;
}

}  // namespace

TEST_CASE("forward: all-zero net outputs 0.5") {
  Rng rng(7);
  NeuralClassifier clf = make_classifier(3, {4}, rng);
  for (Layer& l : clf.layers) {
    std::fill(l.weight.data.begin(), l.weight.data.end(), 0.0);
    std::fill(l.bias.begin(), l.bias.end(), 0.0);
  }
  CHECK(forward(clf, std::vector<double>{0.3, -2.0, 5.0}) == doctest::Approx(0.5));
}

TEST_CASE("forward: orthogonal input stays at 0.5") {
  NeuralClassifier clf = single_layer({1.0, 0.0}, 0.0);
  CHECK(forward(clf, std::vector<double>{0.0, 5.0}) == doctest::Approx(0.5));
}

TEST_CASE("forward: sigmoid evaluation against high-precision value") {
  NeuralClassifier clf = single_layer({2.0}, -1.0);
  // sigmoid(1), frozen from a 40-digit evaluation.
  CHECK(forward(clf, std::vector<double>{1.0}) ==
        doctest::Approx(0.73105857863000487925).epsilon(1e-12));
}

TEST_CASE("forward: dimension mismatch throws") {
  NeuralClassifier clf = single_layer({1.0, 2.0}, 0.0);
  CHECK_THROWS_AS(forward(clf, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("forward output is always strictly inside (0,1)") {
  NeuralClassifier clf = single_layer({1000.0}, 0.0);
  const double hi = forward(clf, std::vector<double>{10.0});
  const double lo = forward(clf, std::vector<double>{-10.0});
  CHECK(hi < 1.0);
  CHECK(hi > 0.99);
  CHECK(lo > 0.0);
  CHECK(lo < 0.01);
}

TEST_CASE("bce_loss values") {
  CHECK(bce_loss(0.5, 0.5) == doctest::Approx(0.69314718055994530942).epsilon(1e-12));
  CHECK(bce_loss(1.0 - 1e-12, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(bce_loss(0.8, 1.0) == doctest::Approx(0.22314355131420975577).epsilon(1e-12));
  // Saturated probabilities stay finite thanks to the clamp.
  CHECK(std::isfinite(bce_loss(0.0, 1.0)));
  CHECK(std::isfinite(bce_loss(1.0, 0.0)));
}

TEST_CASE("hinge_loss values") {
  CHECK(hinge_loss(2.0, 1.0) == 0.0);
  CHECK(hinge_loss(0.0, 1.0) == 1.0);
  CHECK(hinge_loss(-0.5, 1.0) == 1.5);
  CHECK(hinge_loss(-2.0, -1.0) == 0.0);
}

TEST_CASE("backward: stationary point has zero output-bias gradient") {
  // Single layer, w = 0: p = sigmoid(b). Choosing y = p makes the output
  // gradient vanish.
  NeuralClassifier clf = single_layer({0.0, 0.0}, 0.4);
  const double p = sigmoid(0.4);
  const Gradients grads = backward(clf, std::vector<double>{1.0, 2.0}, p,
                                   LossKind::binary_cross_entropy);
  CHECK(grads[0].bias[0] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("backward: single-layer BCE bias gradient is p - y") {
  NeuralClassifier clf = single_layer({0.7, -0.3}, 0.2);
  const std::vector<double> x{1.5, -2.0};
  const double p = forward(clf, x);
  const double y = 0.25;
  const Gradients grads = backward(clf, x, y, LossKind::binary_cross_entropy);
  CHECK(grads[0].bias[0] == doctest::Approx(p - y).epsilon(1e-12));
  // Weight gradient is (p - y) * x.
  CHECK(grads[0].weight.data[0] == doctest::Approx((p - y) * 1.5).epsilon(1e-12));
  CHECK(grads[0].weight.data[1] == doctest::Approx((p - y) * -2.0).epsilon(1e-12));
}

TEST_CASE("backward matches central finite differences on random nets") {
  Rng rng(11);
  const std::vector<std::vector<std::size_t>> shapes = {{}, {5}, {8, 6}, {16, 16}};
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + rng.bounded(5);
    const auto& hidden = shapes[rng.bounded(shapes.size())];
    const LossKind kind = trial % 3 == 0   ? LossKind::hinge
                          : trial % 3 == 1 ? LossKind::squared_error
                                           : LossKind::binary_cross_entropy;
    NeuralClassifier clf = random_net(rng, dim, hidden);
    std::vector<double> x(dim);
    for (double& v : x) v = rng.uniform(-2.0, 2.0);
    double target = 0.0;
    switch (kind) {
      case LossKind::binary_cross_entropy: target = rng.uniform(); break;
      case LossKind::hinge: target = rng.bounded(2) == 0 ? -1.0 : 1.0; break;
      case LossKind::squared_error: target = rng.uniform(-3.0, 3.0); break;
    }
    if (!oracles::away_from_kinks(clf, x, target, kind)) continue;

    const Gradients analytic = backward(clf, x, target, kind);
    const Gradients numeric = oracles::finite_diff_gradients(clf, x, target, kind);
    for (std::size_t l = 0; l < analytic.size(); ++l) {
      for (std::size_t i = 0; i < analytic[l].weight.data.size(); ++i) {
        CHECK(rel_close(analytic[l].weight.data[i], numeric[l].weight.data[i],
                        1e-4, 1e-7));
      }
      for (std::size_t i = 0; i < analytic[l].bias.size(); ++i) {
        CHECK(rel_close(analytic[l].bias[i], numeric[l].bias[i], 1e-4, 1e-7));
      }
    }
    ++checked;
  }
  CHECK(checked >= 25);  // the kink filter should only drop a few
}

TEST_CASE("adam: zero gradients leave parameters untouched") {
  Rng rng(3);
  NeuralClassifier clf = make_classifier(4, {6}, rng);
  const NeuralClassifier before = clf;
  AdamState state = AdamState::init(clf, 0.01);
  const Gradients zeros = zero_gradients(clf);
  for (int i = 0; i < 5; ++i) adam_step(clf, zeros, state);
  for (std::size_t l = 0; l < clf.layers.size(); ++l) {
    for (std::size_t i = 0; i < clf.layers[l].weight.data.size(); ++i) {
      CHECK(clf.layers[l].weight.data[i] == before.layers[l].weight.data[i]);
    }
  }
  CHECK(state.step == 5);
}

TEST_CASE("adam: first step moves by about lr * sign(g)") {
  // At t=1 the bias-corrected moments cancel: delta = lr * g / (|g| + eps).
  NeuralClassifier clf = single_layer({0.5, -0.5}, 0.0);
  AdamState state = AdamState::init(clf, 0.001);
  Gradients grads = zero_gradients(clf);
  grads[0].weight.data[0] = 0.37;
  grads[0].weight.data[1] = -2.4;
  adam_step(clf, grads, state);
  CHECK(clf.layers[0].weight.data[0] ==
        doctest::Approx(0.5 - 0.001).epsilon(1e-6));
  CHECK(clf.layers[0].weight.data[1] ==
        doctest::Approx(-0.5 + 0.001).epsilon(1e-6));
  CHECK(clf.layers[0].bias[0] == 0.0);  // zero gradient component
}

TEST_CASE("adam: constant gradient converges to lr-sized steps") {
  NeuralClassifier clf = single_layer({0.0}, 0.0);
  AdamState state = AdamState::init(clf, 0.01);
  Gradients grads = zero_gradients(clf);
  grads[0].weight.data[0] = 0.8;
  double prev = clf.layers[0].weight.data[0];
  double delta = 0.0;
  for (int i = 0; i < 1000; ++i) {
    adam_step(clf, grads, state);
    delta = clf.layers[0].weight.data[0] - prev;
    prev = clf.layers[0].weight.data[0];
  }
  CHECK(std::fabs(delta) == doctest::Approx(0.01).epsilon(1e-3));
}

TEST_CASE("glorot init: bounds and zero biases") {
  Rng rng(21);
  NeuralClassifier clf = make_classifier(4, {32}, rng);
  const double bound0 = std::sqrt(6.0 / (4 + 32));
  for (double w : clf.layers[0].weight.data) {
    CHECK(std::fabs(w) <= bound0);
  }
  for (double b : clf.layers[0].bias) CHECK(b == 0.0);
  const double bound1 = std::sqrt(6.0 / (32 + 1));
  for (double w : clf.layers[1].weight.data) {
    CHECK(std::fabs(w) <= bound1);
  }
}

TEST_CASE("seeded training is bit-identical") {
  Rng gen(5);
  Dataset d;
  d.dim = 3;
  for (int i = 0; i < 24; ++i) {
    Sample s;
    s.features = {gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
    s.response = gen.uniform(0, 1);
    d.samples.push_back(s);
  }
  std::vector<double> targets;
  for (const Sample& s : d.samples) targets.push_back(s.response > 0.5 ? 1.0 : 0.0);

  auto train_once = [&]() {
    Rng rng(99);
    NeuralClassifier clf = make_classifier(3, {8}, rng);
    FitOptions opts;
    opts.epochs = 50;
    opts.batch_size = 8;
    opts.shuffle_seed = 1234;
    fit_network(clf, d, targets, opts);
    return clf;
  };
  const NeuralClassifier a = train_once();
  const NeuralClassifier b = train_once();
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    CHECK(a.layers[l].weight.data == b.layers[l].weight.data);
    CHECK(a.layers[l].bias == b.layers[l].bias);
  }
}

TEST_CASE("rng: reproducible streams and gaussian sanity") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng g(7);
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  std::vector<double> draws(n);
  for (double& v : draws) {
    v = g.gaussian();
    mean += v;
  }
  mean /= n;
  for (double v : draws) var += (v - mean) * (v - mean);
  var /= n;
  CHECK(std::fabs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
