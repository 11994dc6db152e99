#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nrt {

enum class SplitMethod { scan, gradient };
enum class Penalty { entropy, gini, median };
enum class ClassifierKind { neural, linear_margin };
enum class LeafValue { mean, midpoint };

std::string to_string(SplitMethod m);
std::string to_string(Penalty p);
std::string to_string(ClassifierKind k);
std::string to_string(LeafValue v);

SplitMethod split_method_from_string(const std::string& s);
Penalty penalty_from_string(const std::string& s);
ClassifierKind classifier_kind_from_string(const std::string& s);
LeafValue leaf_value_from_string(const std::string& s);

// Everything a tree build needs. validate() throws std::invalid_argument
// with the offending field named.
struct TrainConfig {
  double lambda = 0.5;  // weight of the classification loss vs the penalty
  double beta = 10.0;   // steepness of the tanh label relaxation
  SplitMethod method = SplitMethod::scan;
  Penalty penalty = Penalty::entropy;
  ClassifierKind classifier_kind = ClassifierKind::neural;
  std::vector<std::size_t> layer_sizes = {32, 32};  // hidden widths
  double learning_rate = 1e-3;
  std::size_t epochs_per_node = 200;
  std::size_t coord_descent_rounds = 5;
  double threshold_lr = 0.0;  // 0 = auto: 0.05 * node response range
  std::size_t max_depth = 6;
  std::size_t min_node_size = 5;
  double purity_epsilon = 0.0;
  double dev_saturation_tol = 0.0;
  std::uint64_t seed = 1;
  std::size_t num_seeds = 1;
  std::size_t scan_candidate_cap = 64;  // 0 = exact scan over all midpoints
  std::size_t batch_size = 0;           // 0 = full batch
  LeafValue leaf_value = LeafValue::mean;

  void validate() const;
};

}  // namespace nrt
