#pragma once

#include <cstdint>
#include <vector>

#include "nrt/classifier.hpp"
#include "nrt/config.hpp"
#include "nrt/dataset.hpp"

namespace nrt {

// 1 iff y >= t (ties go right).
int hard_label(double y, double t);

// 0.5 * (tanh(beta * (y - t)) + 1), the differentiable relaxation of
// hard_label; strictly increasing in y, equals 0.5 at y = t.
double soft_label(double y, double t, double beta);

// Entropy of the label split fraction, with 0 log 0 = 0. Peaks at log 2 for
// a balanced split; zero iff the labels are constant.
double entropy_penalty(const std::vector<int>& labels);

// 2 p (1 - p) for the label split fraction p.
double gini_penalty(const std::vector<int>& labels);

// Squared distance of t from the median response. Even-length medians are
// the mean of the two central order statistics.
double median_penalty(double t, const std::vector<double>& responses);

double median_of(std::vector<double> values);

struct NodeObjective {
  double objective = 0.0;   // lambda * class_loss + (1 - lambda) * penalty
  double class_loss = 0.0;  // mean per-sample loss under hard labels
  double penalty = 0.0;     // triviality penalty, 0 for a balanced split
};

// Hard-label objective of a fixed classifier at threshold t. Requires
// min response < t <= max response. The entropy and gini penalties enter as
// their distance from the balanced maximum (log 2 and 0.5), so minimizing
// the objective favors balanced, non-trivial splits; the median penalty is
// used as is.
NodeObjective node_objective(const Dataset& d, double t,
                             const NeuralClassifier& clf, const TrainConfig& cfg);

struct NodeSolution {
  double threshold = 0.0;
  NeuralClassifier classifier;
  double objective = 0.0;
  double class_loss = 0.0;
  double penalty = 0.0;
};

// Midpoints between consecutive distinct sorted responses. When cap > 0 and
// there are more than cap midpoints, keeps the quantile-even subset at
// indices floor((j + 0.5) * m / cap).
std::vector<double> scan_candidates(const Dataset& d, std::size_t cap);

// The shared starting classifier for one node optimization (seeded Glorot
// init; linear_margin forces a single affine layer).
NeuralClassifier init_node_classifier(const Dataset& d, const TrainConfig& cfg,
                                      std::uint64_t seed);

// Trains clf on the hard labels induced by t: BCE + Adam for neural nodes,
// hinge + subgradient descent for linear-margin nodes. shuffle_seed is
// consumed only when cfg.batch_size splits the node into mini-batches.
void train_node_classifier(NeuralClassifier& clf, const Dataset& d, double t,
                           const TrainConfig& cfg, std::uint64_t shuffle_seed);

// Relaxed node objective lambda * E_soft + (1 - lambda) * (t - median)^2,
// where E_soft is the mean BCE against soft labels at t; and its exact
// derivative in t (the labels' dependence on t is what differentiates).
double relaxed_objective(const Dataset& d, double t, const NeuralClassifier& clf,
                         const TrainConfig& cfg, double median);
double relaxed_objective_t_gradient(const Dataset& d, double t,
                                    const NeuralClassifier& clf,
                                    const TrainConfig& cfg, double median);

// Scan method: train a classifier per candidate threshold, return the
// candidate with the minimal hard-label objective. Ties break toward the
// candidate nearest the median response, then toward the smaller value.
NodeSolution optimize_node_scan(const Dataset& d, const TrainConfig& cfg,
                                std::uint64_t seed);

// Gradient method: coordinate descent alternating classifier epochs on the
// relaxed labels with threshold descent steps on the relaxed objective.
// Requires cfg.penalty == median. The reported objective uses hard labels
// so the two methods are comparable.
NodeSolution optimize_node_gradient(const Dataset& d, const TrainConfig& cfg,
                                    std::uint64_t seed);

// Dispatches on cfg.method.
NodeSolution optimize_node(const Dataset& d, const TrainConfig& cfg,
                           std::uint64_t seed);

}  // namespace nrt
