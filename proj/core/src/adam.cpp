#include "nrt/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace nrt {

AdamState AdamState::init(const NeuralClassifier& clf, double learning_rate) {
  AdamState state;
  state.m = zero_gradients(clf);
  state.v = zero_gradients(clf);
  state.learning_rate = learning_rate;
  return state;
}

void adam_step(NeuralClassifier& params, const Gradients& grads, AdamState& state) {
  if (grads.size() != params.layers.size() || state.m.size() != params.layers.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);

  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    Layer& p = params.layers[l];
    const Layer& g = grads[l];
    Layer& m = state.m[l];
    Layer& v = state.v[l];
    if (g.weight.size() != p.weight.size() || g.bias.size() != p.bias.size()) {
      throw std::invalid_argument("adam_step: shape mismatch at layer " +
                                  std::to_string(l));
    }
    auto update = [&](double& param, double grad, double& m1, double& m2) {
      m1 = state.beta1 * m1 + (1.0 - state.beta1) * grad;
      m2 = state.beta2 * m2 + (1.0 - state.beta2) * grad * grad;
      const double mhat = m1 / bc1;
      const double vhat = m2 / bc2;
      param -= state.learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
    };
    for (std::size_t i = 0; i < p.weight.data.size(); ++i) {
      update(p.weight.data[i], g.weight.data[i], m.weight.data[i], v.weight.data[i]);
    }
    for (std::size_t i = 0; i < p.bias.size(); ++i) {
      update(p.bias[i], g.bias[i], m.bias[i], v.bias[i]);
    }
  }
}

}  // namespace nrt
