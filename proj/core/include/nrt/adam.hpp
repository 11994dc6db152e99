#pragma once

#include <cstdint>

#include "nrt/classifier.hpp"

namespace nrt {

// Adam accumulators; shapes mirror the classifier parameters. beta1, beta2
// and epsilon are the usual constants, only the learning rate is tuned.
struct AdamState {
  Gradients m;  // first moments
  Gradients v;  // second moments
  std::int64_t step = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState init(const NeuralClassifier& clf, double learning_rate);
};

// One bias-corrected Adam update; increments the step counter.
void adam_step(NeuralClassifier& params, const Gradients& grads, AdamState& state);

}  // namespace nrt
