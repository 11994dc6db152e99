#pragma once

#include <cstdint>
#include <vector>

#include "nrt/adam.hpp"
#include "nrt/classifier.hpp"
#include "nrt/dataset.hpp"

namespace nrt {

enum class Optimizer { adam, sgd };

struct FitOptions {
  LossKind loss = LossKind::binary_cross_entropy;
  Optimizer optimizer = Optimizer::adam;
  double learning_rate = 1e-3;
  std::size_t epochs = 200;
  std::size_t batch_size = 0;      // 0 = full batch
  double loss_scale = 1.0;         // multiplies every gradient
  std::uint64_t shuffle_seed = 0;  // consumed only when mini-batching
};

// Minimizes the mean per-sample loss of net against targets (parallel to
// data.samples). Throws DivergedError when parameters stop being finite.
void fit_network(NeuralClassifier& net, const Dataset& data,
                 const std::vector<double>& targets, const FitOptions& opts);

double mean_loss(const NeuralClassifier& net, const Dataset& data,
                 const std::vector<double>& targets, LossKind kind);

}  // namespace nrt
