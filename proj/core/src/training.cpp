#include "nrt/training.hpp"

#include <numeric>
#include <stdexcept>

#include "nrt/errors.hpp"
#include "nrt/rng.hpp"

namespace nrt {

namespace {

void sgd_step(NeuralClassifier& params, const Gradients& grads, double lr) {
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    Layer& p = params.layers[l];
    const Layer& g = grads[l];
    for (std::size_t i = 0; i < p.weight.data.size(); ++i) {
      p.weight.data[i] -= lr * g.weight.data[i];
    }
    for (std::size_t i = 0; i < p.bias.size(); ++i) {
      p.bias[i] -= lr * g.bias[i];
    }
  }
}

}  // namespace

void fit_network(NeuralClassifier& net, const Dataset& data,
                 const std::vector<double>& targets, const FitOptions& opts) {
  const std::size_t n = data.size();
  if (n == 0) throw std::invalid_argument("fit_network: empty dataset");
  if (targets.size() != n) {
    throw std::invalid_argument("fit_network: targets do not match dataset size");
  }

  const std::size_t batch =
      (opts.batch_size == 0 || opts.batch_size >= n) ? n : opts.batch_size;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffle_rng(opts.shuffle_seed);

  AdamState state = AdamState::init(net, opts.learning_rate);
  Gradients grads = zero_gradients(net);
  BackpropWorkspace ws;

  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    if (batch < n) shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(start + batch, n);
      zero_out(grads);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        accumulate_backward(net, data.samples[i].features, targets[i], opts.loss,
                            grads, ws);
      }
      scale_gradients(grads, opts.loss_scale / static_cast<double>(end - start));
      if (opts.optimizer == Optimizer::adam) {
        adam_step(net, grads, state);
      } else {
        sgd_step(net, grads, opts.learning_rate);
      }
    }
    if (!net.finite()) {
      throw DivergedError("fit_network: non-finite parameters at epoch " +
                          std::to_string(epoch));
    }
  }
}

double mean_loss(const NeuralClassifier& net, const Dataset& data,
                 const std::vector<double>& targets, LossKind kind) {
  if (data.empty()) throw std::invalid_argument("mean_loss: empty dataset");
  if (targets.size() != data.size()) {
    throw std::invalid_argument("mean_loss: targets do not match dataset size");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double out = margin(net, data.samples[i].features);
    switch (kind) {
      case LossKind::binary_cross_entropy:
        total += bce_loss(sigmoid(out), targets[i]);
        break;
      case LossKind::hinge:
        total += hinge_loss(out, targets[i]);
        break;
      case LossKind::squared_error:
        total += squared_loss(out, targets[i]);
        break;
    }
  }
  return total / static_cast<double>(data.size());
}

}  // namespace nrt
