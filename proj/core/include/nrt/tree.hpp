#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "nrt/classifier.hpp"
#include "nrt/config.hpp"
#include "nrt/dataset.hpp"

namespace nrt {

// One node of the response-partition tree. Every node covers a response
// interval (low, high]; internal nodes split it at threshold, leaves carry
// the bin payload. Ids are level-order: parents and left siblings are
// always smaller.
struct TreeNode {
  int id = 0;
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;  // training samples that reached this node
  bool leaf = true;

  // Leaf payload.
  double representative = 0.0;

  // Internal payload.
  double threshold = 0.0;
  NeuralClassifier classifier;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;

  Bin bin() const { return Bin{low, high, representative, count}; }
  std::unique_ptr<TreeNode> clone() const;
};

struct TrainingLogEntry {
  int node_id = 0;
  std::size_t samples = 0;
  double threshold = 0.0;
  double objective = 0.0;
  double class_loss = 0.0;
  double penalty = 0.0;
};

struct NrtModel {
  std::unique_ptr<TreeNode> root;
  std::size_t dim = 0;
  TrainConfig config;
  std::size_t depth = 0;
  std::size_t leaf_count = 0;
  std::vector<TrainingLogEntry> training_log;  // internal nodes, by id

  NrtModel() = default;
  NrtModel(const NrtModel& other);
  NrtModel& operator=(const NrtModel& other);
  NrtModel(NrtModel&&) = default;
  NrtModel& operator=(NrtModel&&) = default;
};

// Grows the tree level by level: each splittable frontier node is optimized
// with optimize_node, its data partitioned at the learned threshold, and the
// recursion continues until purity (response spread <= purity_epsilon), a
// size floor (< 2 * min_node_size), or max_depth stops it. When dev is
// given, a level that fails to improve dev MAE (soft predictions) by more
// than dev_saturation_tol rolls the tree back to the last improving level.
NrtModel build_tree(const Dataset& train, const Dataset* dev,
                    const TrainConfig& cfg);

// Leaf bins left to right: sorted, disjoint, contiguous.
std::vector<Bin> leaves_of(const NrtModel& model);

// Leaf nodes left to right (the index order used by the posteriors).
std::vector<const TreeNode*> leaf_nodes(const NrtModel& model);

const TreeNode* find_node(const NrtModel& model, int id);

// Recomputed depth / leaf count of a subtree.
std::size_t tree_depth(const TreeNode& node);
std::size_t count_leaves(const TreeNode& node);

}  // namespace nrt
