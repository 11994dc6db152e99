#include "nrt/node_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nrt/errors.hpp"
#include "nrt/rng.hpp"
#include "nrt/training.hpp"

namespace nrt {

namespace {

// Inner descent steps on the threshold per coordinate-descent round.
constexpr int kThresholdStepsPerRound = 10;

double label_fraction(const std::vector<int>& labels) {
  if (labels.empty()) throw std::invalid_argument("empty label list");
  double ones = 0.0;
  for (int l : labels) ones += (l != 0) ? 1.0 : 0.0;
  return ones / static_cast<double>(labels.size());
}

void check_node_preconditions(const Dataset& d, const TrainConfig& cfg) {
  cfg.validate();
  d.validate();
  if (d.size() < 2 * cfg.min_node_size) {
    throw std::invalid_argument("node has " + std::to_string(d.size()) +
                                " samples, needs at least " +
                                std::to_string(2 * cfg.min_node_size));
  }
  if (d.max_response() - d.min_response() <= cfg.purity_epsilon) {
    throw std::invalid_argument("pure node: response spread within purity_epsilon");
  }
}

// Keeps t strictly inside (lo, hi) so both children stay non-empty.
double clamp_threshold(double t, double lo, double hi) {
  const double margin = 1e-9 * (hi - lo);
  return std::min(std::max(t, lo + margin), hi - margin);
}

std::vector<double> hard_targets(const Dataset& d, double t, ClassifierKind kind) {
  std::vector<double> targets;
  targets.reserve(d.size());
  for (const Sample& s : d.samples) {
    const int label = hard_label(s.response, t);
    if (kind == ClassifierKind::linear_margin) {
      targets.push_back(label != 0 ? 1.0 : -1.0);
    } else {
      targets.push_back(static_cast<double>(label));
    }
  }
  return targets;
}

}  // namespace

int hard_label(double y, double t) { return y >= t ? 1 : 0; }

double soft_label(double y, double t, double beta) {
  return 0.5 * (std::tanh(beta * (y - t)) + 1.0);
}

double entropy_penalty(const std::vector<int>& labels) {
  const double p = label_fraction(labels);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

double gini_penalty(const std::vector<int>& labels) {
  const double p = label_fraction(labels);
  return 2.0 * p * (1.0 - p);
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double median_penalty(double t, const std::vector<double>& responses) {
  const double m = median_of(responses);
  return (t - m) * (t - m);
}

NodeObjective node_objective(const Dataset& d, double t,
                             const NeuralClassifier& clf, const TrainConfig& cfg) {
  if (d.size() < 2) {
    throw std::invalid_argument("node_objective needs at least 2 samples");
  }
  const double lo = d.min_response();
  const double hi = d.max_response();
  if (!(t > lo && t <= hi)) {
    throw std::invalid_argument("threshold outside the node's response range");
  }

  std::vector<int> labels;
  labels.reserve(d.size());
  for (const Sample& s : d.samples) labels.push_back(hard_label(s.response, t));

  double loss = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (cfg.classifier_kind == ClassifierKind::linear_margin) {
      loss += hinge_loss(margin(clf, d.samples[i].features),
                         labels[i] != 0 ? 1.0 : -1.0);
    } else {
      loss += bce_loss(forward(clf, d.samples[i].features),
                       static_cast<double>(labels[i]));
    }
  }
  loss /= static_cast<double>(d.size());

  // The triviality penalty must be smallest for balanced splits (the median
  // minimizes it), so entropy and gini enter as their distance from the
  // balanced maximum. Plain entropy/gini would reward degenerate thresholds
  // that also make the classification loss vanish.
  double penalty = 0.0;
  switch (cfg.penalty) {
    case Penalty::entropy:
      penalty = std::log(2.0) - entropy_penalty(labels);
      break;
    case Penalty::gini:
      penalty = 0.5 - gini_penalty(labels);
      break;
    case Penalty::median:
      penalty = median_penalty(t, d.responses());
      break;
  }

  NodeObjective out;
  out.class_loss = loss;
  out.penalty = penalty;
  out.objective = cfg.lambda * loss + (1.0 - cfg.lambda) * penalty;
  return out;
}

std::vector<double> scan_candidates(const Dataset& d, std::size_t cap) {
  std::vector<double> responses = d.responses();
  std::sort(responses.begin(), responses.end());
  responses.erase(std::unique(responses.begin(), responses.end()), responses.end());

  std::vector<double> mids;
  mids.reserve(responses.size());
  for (std::size_t i = 0; i + 1 < responses.size(); ++i) {
    mids.push_back(0.5 * (responses[i] + responses[i + 1]));
  }
  if (cap == 0 || mids.size() <= cap) return mids;

  std::vector<double> thinned;
  thinned.reserve(cap);
  const double m = static_cast<double>(mids.size());
  for (std::size_t j = 0; j < cap; ++j) {
    const auto idx = static_cast<std::size_t>((static_cast<double>(j) + 0.5) * m /
                                              static_cast<double>(cap));
    const double candidate = mids[std::min(idx, mids.size() - 1)];
    if (thinned.empty() || thinned.back() != candidate) thinned.push_back(candidate);
  }
  return thinned;
}

NeuralClassifier init_node_classifier(const Dataset& d, const TrainConfig& cfg,
                                      std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  const std::vector<std::size_t> hidden =
      cfg.classifier_kind == ClassifierKind::linear_margin
          ? std::vector<std::size_t>{}
          : cfg.layer_sizes;
  return make_classifier(d.dim, hidden, rng);
}

void train_node_classifier(NeuralClassifier& clf, const Dataset& d, double t,
                           const TrainConfig& cfg, std::uint64_t shuffle_seed) {
  FitOptions opts;
  opts.learning_rate = cfg.learning_rate;
  opts.epochs = cfg.epochs_per_node;
  opts.batch_size = cfg.batch_size;
  opts.shuffle_seed = shuffle_seed;
  if (cfg.classifier_kind == ClassifierKind::linear_margin) {
    opts.loss = LossKind::hinge;
    opts.optimizer = Optimizer::sgd;
  } else {
    opts.loss = LossKind::binary_cross_entropy;
    opts.optimizer = Optimizer::adam;
  }
  fit_network(clf, d, hard_targets(d, t, cfg.classifier_kind), opts);
}

double relaxed_objective(const Dataset& d, double t, const NeuralClassifier& clf,
                         const TrainConfig& cfg, double median) {
  double loss = 0.0;
  for (const Sample& s : d.samples) {
    const double p = forward(clf, s.features);
    loss += bce_loss(p, soft_label(s.response, t, cfg.beta));
  }
  loss /= static_cast<double>(d.size());
  const double dist = t - median;
  return cfg.lambda * loss + (1.0 - cfg.lambda) * dist * dist;
}

double relaxed_objective_t_gradient(const Dataset& d, double t,
                                    const NeuralClassifier& clf,
                                    const TrainConfig& cfg, double median) {
  // dBCE/ds = log((1-p)/p); ds/dt = -0.5 * beta * sech^2(beta * (y - t)).
  double grad = 0.0;
  for (const Sample& s : d.samples) {
    double p = forward(clf, s.features);
    p = std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
    const double dloss_ds = std::log((1.0 - p) / p);
    const double th = std::tanh(cfg.beta * (s.response - t));
    const double ds_dt = -0.5 * cfg.beta * (1.0 - th * th);
    grad += dloss_ds * ds_dt;
  }
  grad /= static_cast<double>(d.size());
  return cfg.lambda * grad + 2.0 * (1.0 - cfg.lambda) * (t - median);
}

NodeSolution optimize_node_scan(const Dataset& d, const TrainConfig& cfg,
                                std::uint64_t seed) {
  check_node_preconditions(d, cfg);

  const std::vector<double> candidates = scan_candidates(d, cfg.scan_candidate_cap);
  const double med = median_of(d.responses());
  const NeuralClassifier init = init_node_classifier(d, cfg, seed);

  bool have_best = false;
  NodeSolution best;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double t = candidates[c];
    NeuralClassifier clf = init;
    train_node_classifier(clf, d, t, cfg, derive_seed(seed, c + 1));
    const NodeObjective obj = node_objective(d, t, clf, cfg);

    bool better = false;
    if (!have_best || obj.objective < best.objective) {
      better = true;
    } else if (obj.objective == best.objective) {
      const double dist = std::fabs(t - med);
      const double best_dist = std::fabs(best.threshold - med);
      better = dist < best_dist || (dist == best_dist && t < best.threshold);
    }
    if (better) {
      best.threshold = t;
      best.classifier = std::move(clf);
      best.objective = obj.objective;
      best.class_loss = obj.class_loss;
      best.penalty = obj.penalty;
      have_best = true;
    }
  }
  if (!have_best) {
    throw std::invalid_argument("no split candidates (all responses equal?)");
  }
  return best;
}

NodeSolution optimize_node_gradient(const Dataset& d, const TrainConfig& cfg,
                                    std::uint64_t seed) {
  check_node_preconditions(d, cfg);
  if (cfg.penalty != Penalty::median) {
    throw std::invalid_argument("the gradient method requires the median penalty");
  }

  const double lo = d.min_response();
  const double hi = d.max_response();
  const double med = median_of(d.responses());
  const double step =
      cfg.threshold_lr > 0.0 ? cfg.threshold_lr : 0.05 * (hi - lo);

  double t = med;
  NeuralClassifier clf = init_node_classifier(d, cfg, seed);
  std::vector<double> targets(d.size());

  for (std::size_t round = 0; round < cfg.coord_descent_rounds; ++round) {
    // Classifier step at fixed t on the relaxed labels. The lambda factor
    // scales the gradients exactly as in the combined objective.
    for (std::size_t i = 0; i < d.size(); ++i) {
      targets[i] = soft_label(d.samples[i].response, t, cfg.beta);
    }
    FitOptions opts;
    opts.loss = LossKind::binary_cross_entropy;
    opts.optimizer = Optimizer::adam;
    opts.learning_rate = cfg.learning_rate;
    opts.epochs = cfg.epochs_per_node;
    opts.batch_size = cfg.batch_size;
    opts.loss_scale = cfg.lambda;
    opts.shuffle_seed = derive_seed(seed, round + 1);
    fit_network(clf, d, targets, opts);

    // Threshold step: plain descent on the relaxed objective.
    for (int k = 0; k < kThresholdStepsPerRound; ++k) {
      const double g = relaxed_objective_t_gradient(d, t, clf, cfg, med);
      t -= step * g;
      if (!std::isfinite(t)) {
        throw DivergedError("threshold optimization diverged");
      }
      t = clamp_threshold(t, lo, hi);
    }
  }

  t = clamp_threshold(t, lo, hi);
  const NodeObjective obj = node_objective(d, t, clf, cfg);
  if (!std::isfinite(obj.objective)) {
    throw DivergedError("node objective diverged");
  }

  NodeSolution out;
  out.threshold = t;
  out.classifier = std::move(clf);
  out.objective = obj.objective;
  out.class_loss = obj.class_loss;
  out.penalty = obj.penalty;
  return out;
}

NodeSolution optimize_node(const Dataset& d, const TrainConfig& cfg,
                           std::uint64_t seed) {
  if (cfg.method == SplitMethod::gradient) {
    return optimize_node_gradient(d, cfg, seed);
  }
  return optimize_node_scan(d, cfg, seed);
}

}  // namespace nrt
