#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nrt/matrix.hpp"
#include "nrt/rng.hpp"

namespace nrt {

// Probabilities are clamped into [kProbClamp, 1 - kProbClamp] before logs.
constexpr double kProbClamp = 1e-12;

struct Layer {
  Matrix weight;             // out x in
  std::vector<double> bias;  // out
};

enum class LossKind { binary_cross_entropy, hinge, squared_error };

// Feedforward net: affine layers with ReLU between them and a single raw
// output unit. forward() squashes the output through a logistic sigmoid;
// margin() returns it untouched (hinge training, regression heads).
struct NeuralClassifier {
  std::vector<Layer> layers;

  std::size_t input_dim() const {
    return layers.empty() ? 0 : layers.front().weight.cols;
  }
  std::size_t parameter_count() const;
  bool finite() const;
};

// Glorot-uniform weights in +/- sqrt(6 / (fan_in + fan_out)), zero biases.
// hidden_sizes may be empty, which yields a single affine layer.
NeuralClassifier make_classifier(std::size_t input_dim,
                                 const std::vector<std::size_t>& hidden_sizes,
                                 Rng& rng);

double sigmoid(double z);

// Raw (pre-sigmoid) scalar output of the net.
double margin(const NeuralClassifier& clf, std::span<const double> x);

// P(right child | x) = sigmoid(margin(x)), always in (0, 1).
double forward(const NeuralClassifier& clf, std::span<const double> x);

// -(y log p + (1-y) log(1-p)) with p clamped; y is a soft label in [0, 1].
double bce_loss(double p, double y);

// max(0, 1 - y_sign * margin_score) with y_sign in {-1, +1}.
double hinge_loss(double margin_score, double y_sign);

double squared_loss(double output, double y);

// Gradients mirror the classifier's layer shapes.
using Gradients = std::vector<Layer>;

Gradients zero_gradients(const NeuralClassifier& clf);
void zero_out(Gradients& grads);
void scale_gradients(Gradients& grads, double factor);

// Scratch buffers reused across backward calls inside a training loop.
struct BackpropWorkspace {
  std::vector<std::vector<double>> acts;  // acts[0] = x, acts[k+1] = layer k output
  std::vector<std::vector<double>> deltas;
};

// Accumulates (+=) the exact loss gradient for one sample into grads.
// target is a soft label for BCE, +/-1 for hinge, the response for squared.
void accumulate_backward(const NeuralClassifier& clf, std::span<const double> x,
                         double target, LossKind kind, Gradients& grads,
                         BackpropWorkspace& ws);

// Single-sample convenience wrapper around accumulate_backward.
Gradients backward(const NeuralClassifier& clf, std::span<const double> x,
                   double target, LossKind kind);

}  // namespace nrt
