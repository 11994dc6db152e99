#include "nrt/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nrt {

namespace {

double clamp_prob(double p) {
  return std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
}

void check_input(const NeuralClassifier& clf, std::span<const double> x) {
  if (clf.layers.empty()) {
    throw std::invalid_argument("classifier has no layers");
  }
  if (x.size() != clf.input_dim()) {
    throw std::invalid_argument("input dimension mismatch: expected " +
                                std::to_string(clf.input_dim()) + ", got " +
                                std::to_string(x.size()));
  }
}

// Affine + ReLU stack; writes every layer's post-activation into acts.
// acts[0] is the input, acts[L] the raw scalar output.
double run_forward(const NeuralClassifier& clf, std::span<const double> x,
                   std::vector<std::vector<double>>& acts) {
  const std::size_t num_layers = clf.layers.size();
  acts.resize(num_layers + 1);
  acts[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < num_layers; ++l) {
    const Layer& layer = clf.layers[l];
    const std::vector<double>& in = acts[l];
    std::vector<double>& out = acts[l + 1];
    out.assign(layer.weight.rows, 0.0);
    for (std::size_t o = 0; o < layer.weight.rows; ++o) {
      double z = layer.bias[o];
      const double* row = layer.weight.data.data() + o * layer.weight.cols;
      for (std::size_t i = 0; i < layer.weight.cols; ++i) z += row[i] * in[i];
      const bool hidden = l + 1 < num_layers;
      out[o] = hidden ? std::max(z, 0.0) : z;
    }
  }
  return acts[num_layers][0];
}

}  // namespace

std::size_t NeuralClassifier::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& layer : layers) n += layer.weight.size() + layer.bias.size();
  return n;
}

bool NeuralClassifier::finite() const {
  for (const Layer& layer : layers) {
    for (double w : layer.weight.data) {
      if (!std::isfinite(w)) return false;
    }
    for (double b : layer.bias) {
      if (!std::isfinite(b)) return false;
    }
  }
  return true;
}

NeuralClassifier make_classifier(std::size_t input_dim,
                                 const std::vector<std::size_t>& hidden_sizes,
                                 Rng& rng) {
  if (input_dim == 0) throw std::invalid_argument("input_dim must be positive");
  std::vector<std::size_t> dims;
  dims.push_back(input_dim);
  for (std::size_t h : hidden_sizes) {
    if (h == 0) throw std::invalid_argument("hidden layer width must be positive");
    dims.push_back(h);
  }
  dims.push_back(1);

  NeuralClassifier clf;
  clf.layers.reserve(dims.size() - 1);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const std::size_t fan_in = dims[l];
    const std::size_t fan_out = dims[l + 1];
    Layer layer;
    layer.weight = Matrix(fan_out, fan_in);
    layer.bias.assign(fan_out, 0.0);
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& w : layer.weight.data) w = rng.uniform(-bound, bound);
    clf.layers.push_back(std::move(layer));
  }
  return clf;
}

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double margin(const NeuralClassifier& clf, std::span<const double> x) {
  check_input(clf, x);
  thread_local std::vector<std::vector<double>> acts;
  return run_forward(clf, x, acts);
}

double forward(const NeuralClassifier& clf, std::span<const double> x) {
  // Clamped so the output stays strictly inside (0, 1) even when the
  // sigmoid saturates in double precision.
  return clamp_prob(sigmoid(margin(clf, x)));
}

double bce_loss(double p, double y) {
  const double q = clamp_prob(p);
  return -(y * std::log(q) + (1.0 - y) * std::log(1.0 - q));
}

double hinge_loss(double margin_score, double y_sign) {
  return std::max(0.0, 1.0 - y_sign * margin_score);
}

double squared_loss(double output, double y) {
  const double r = output - y;
  return r * r;
}

Gradients zero_gradients(const NeuralClassifier& clf) {
  Gradients grads;
  grads.reserve(clf.layers.size());
  for (const Layer& layer : clf.layers) {
    Layer g;
    g.weight = Matrix(layer.weight.rows, layer.weight.cols);
    g.bias.assign(layer.bias.size(), 0.0);
    grads.push_back(std::move(g));
  }
  return grads;
}

void zero_out(Gradients& grads) {
  for (Layer& g : grads) {
    std::fill(g.weight.data.begin(), g.weight.data.end(), 0.0);
    std::fill(g.bias.begin(), g.bias.end(), 0.0);
  }
}

void scale_gradients(Gradients& grads, double factor) {
  for (Layer& g : grads) {
    for (double& w : g.weight.data) w *= factor;
    for (double& b : g.bias) b *= factor;
  }
}

void accumulate_backward(const NeuralClassifier& clf, std::span<const double> x,
                         double target, LossKind kind, Gradients& grads,
                         BackpropWorkspace& ws) {
  check_input(clf, x);
  if (grads.size() != clf.layers.size()) {
    throw std::invalid_argument("gradient shape mismatch");
  }
  const std::size_t num_layers = clf.layers.size();
  const double z = run_forward(clf, x, ws.acts);

  // dLoss/dz for the single raw output.
  double dz = 0.0;
  switch (kind) {
    case LossKind::binary_cross_entropy:
      // Composite sigmoid + BCE gradient.
      dz = sigmoid(z) - target;
      break;
    case LossKind::hinge:
      dz = (1.0 - target * z > 0.0) ? -target : 0.0;
      break;
    case LossKind::squared_error:
      dz = 2.0 * (z - target);
      break;
  }

  ws.deltas.resize(num_layers);
  ws.deltas[num_layers - 1].assign(1, dz);
  for (std::size_t l = num_layers; l-- > 0;) {
    const Layer& layer = clf.layers[l];
    const std::vector<double>& delta = ws.deltas[l];
    const std::vector<double>& in = ws.acts[l];
    Layer& g = grads[l];
    for (std::size_t o = 0; o < layer.weight.rows; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      g.bias[o] += d;
      double* grow = g.weight.data.data() + o * layer.weight.cols;
      for (std::size_t i = 0; i < layer.weight.cols; ++i) grow[i] += d * in[i];
    }
    if (l == 0) break;
    // delta for the previous layer, gated by its ReLU.
    std::vector<double>& prev = ws.deltas[l - 1];
    prev.assign(layer.weight.cols, 0.0);
    for (std::size_t o = 0; o < layer.weight.rows; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      const double* row = layer.weight.data.data() + o * layer.weight.cols;
      for (std::size_t i = 0; i < layer.weight.cols; ++i) prev[i] += row[i] * d;
    }
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (ws.acts[l][i] <= 0.0) prev[i] = 0.0;  // ReLU derivative, 0 at the kink
    }
  }
}

Gradients backward(const NeuralClassifier& clf, std::span<const double> x,
                   double target, LossKind kind) {
  Gradients grads = zero_gradients(clf);
  BackpropWorkspace ws;
  accumulate_backward(clf, x, target, kind, grads, ws);
  return grads;
}

}  // namespace nrt
