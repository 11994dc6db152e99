#include "nrt/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nrt/inference.hpp"
#include "nrt/node_opt.hpp"
#include "nrt/rng.hpp"

namespace nrt {

std::unique_ptr<TreeNode> TreeNode::clone() const {
  auto copy = std::make_unique<TreeNode>();
  copy->id = id;
  copy->low = low;
  copy->high = high;
  copy->count = count;
  copy->leaf = leaf;
  copy->representative = representative;
  copy->threshold = threshold;
  copy->classifier = classifier;
  if (left) copy->left = left->clone();
  if (right) copy->right = right->clone();
  return copy;
}

NrtModel::NrtModel(const NrtModel& other)
    : root(other.root ? other.root->clone() : nullptr),
      dim(other.dim),
      config(other.config),
      depth(other.depth),
      leaf_count(other.leaf_count),
      training_log(other.training_log) {}

NrtModel& NrtModel::operator=(const NrtModel& other) {
  if (this != &other) {
    root = other.root ? other.root->clone() : nullptr;
    dim = other.dim;
    config = other.config;
    depth = other.depth;
    leaf_count = other.leaf_count;
    training_log = other.training_log;
  }
  return *this;
}

std::size_t tree_depth(const TreeNode& node) {
  if (node.leaf) return 0;
  return 1 + std::max(tree_depth(*node.left), tree_depth(*node.right));
}

std::size_t count_leaves(const TreeNode& node) {
  if (node.leaf) return 1;
  return count_leaves(*node.left) + count_leaves(*node.right);
}

namespace {

struct PendingNode {
  TreeNode* node = nullptr;
  Dataset data;
  std::size_t depth = 0;
};

void fill_leaf_payload(TreeNode& node, const Dataset& d, LeafValue kind) {
  node.leaf = true;
  node.count = d.size();
  if (kind == LeafValue::midpoint) {
    node.representative = 0.5 * (node.low + node.high);
    return;
  }
  double sum = 0.0;
  for (const Sample& s : d.samples) sum += s.response;
  node.representative = sum / static_cast<double>(d.size());
}

bool splittable(const PendingNode& p, const TrainConfig& cfg) {
  if (p.depth >= cfg.max_depth) return false;
  if (p.data.size() < 2 * cfg.min_node_size) return false;
  if (p.data.max_response() - p.data.min_response() <= cfg.purity_epsilon) {
    return false;
  }
  return true;
}

double dev_mae(const TreeNode& root, const Dataset& dev) {
  double total = 0.0;
  for (const Sample& s : dev.samples) {
    total += std::fabs(predict_soft_node(root, s.features) - s.response);
  }
  return total / static_cast<double>(dev.size());
}

void collect_log(const TreeNode& node,
                 const std::map<int, TrainingLogEntry>& entries,
                 std::vector<TrainingLogEntry>& out) {
  if (node.leaf) return;
  auto it = entries.find(node.id);
  if (it != entries.end()) out.push_back(it->second);
  collect_log(*node.left, entries, out);
  collect_log(*node.right, entries, out);
}

}  // namespace

NrtModel build_tree(const Dataset& train, const Dataset* dev,
                    const TrainConfig& cfg) {
  cfg.validate();
  train.validate();
  if (train.empty()) throw std::invalid_argument("build_tree: empty training set");
  if (train.dim == 0) throw std::invalid_argument("build_tree: zero-dimensional features");
  if (train.size() < 2 * cfg.min_node_size) {
    throw std::invalid_argument("build_tree: training set smaller than 2 * min_node_size");
  }
  if (dev != nullptr) {
    dev->validate();
    if (dev->empty()) throw std::invalid_argument("build_tree: empty dev set");
    if (dev->dim != train.dim) {
      throw std::invalid_argument("build_tree: dev dimension mismatch");
    }
  }

  const double lo = train.min_response();
  const double hi = train.max_response();
  const double range = hi - lo;
  // Root bin opens just below the minimum so every training response falls
  // in some (low, high] interval.
  const double eps_r =
      range > 0.0 ? 1e-9 * range : 1e-9 * std::max(1.0, std::fabs(lo));

  auto root = std::make_unique<TreeNode>();
  root->id = 0;
  root->low = lo - eps_r;
  root->high = hi;
  fill_leaf_payload(*root, train, cfg.leaf_value);

  std::map<int, TrainingLogEntry> log_entries;
  int next_id = 1;

  std::vector<PendingNode> frontier;
  frontier.push_back(PendingNode{root.get(), train, 0});

  // Level-wise growth so dev saturation can compare tree prefixes.
  std::unique_ptr<TreeNode> best_root;
  double best_mae = 0.0;
  if (dev != nullptr) {
    best_root = root->clone();
    best_mae = dev_mae(*root, *dev);
  }

  bool rolled_back = false;
  while (true) {
    std::vector<PendingNode*> to_split;
    for (PendingNode& p : frontier) {
      if (splittable(p, cfg)) to_split.push_back(&p);
    }
    if (to_split.empty()) break;

    std::vector<PendingNode> next_frontier;
    for (PendingNode* p : to_split) {
      TreeNode& node = *p->node;
      NodeSolution sol =
          optimize_node(p->data, cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(node.id)));
      auto [left_data, right_data] = split_dataset(p->data, sol.threshold);

      node.leaf = false;
      node.threshold = sol.threshold;
      node.classifier = std::move(sol.classifier);
      node.left = std::make_unique<TreeNode>();
      node.right = std::make_unique<TreeNode>();
      node.left->id = next_id++;
      node.right->id = next_id++;
      node.left->low = node.low;
      node.left->high = sol.threshold;
      node.right->low = sol.threshold;
      node.right->high = node.high;
      fill_leaf_payload(*node.left, left_data, cfg.leaf_value);
      fill_leaf_payload(*node.right, right_data, cfg.leaf_value);

      log_entries[node.id] = TrainingLogEntry{
          node.id, p->data.size(), sol.threshold, sol.objective,
          sol.class_loss, sol.penalty};

      next_frontier.push_back(
          PendingNode{node.left.get(), std::move(left_data), p->depth + 1});
      next_frontier.push_back(
          PendingNode{node.right.get(), std::move(right_data), p->depth + 1});
    }
    frontier = std::move(next_frontier);

    if (dev != nullptr) {
      const double mae_now = dev_mae(*root, *dev);
      if (best_mae - mae_now > cfg.dev_saturation_tol) {
        best_mae = mae_now;
        best_root = root->clone();
      } else {
        // This level did not help; return the last improving prefix.
        root = std::move(best_root);
        rolled_back = true;
        break;
      }
    }
  }
  if (dev != nullptr && !rolled_back) {
    // Growth ended on stop conditions; keep the best evaluated prefix.
    root = std::move(best_root);
  }

  NrtModel model;
  model.dim = train.dim;
  model.config = cfg;
  model.depth = tree_depth(*root);
  model.leaf_count = count_leaves(*root);
  collect_log(*root, log_entries, model.training_log);
  std::sort(model.training_log.begin(), model.training_log.end(),
            [](const TrainingLogEntry& a, const TrainingLogEntry& b) {
              return a.node_id < b.node_id;
            });
  model.root = std::move(root);
  return model;
}

namespace {

void collect_leaf_nodes(const TreeNode& node, std::vector<const TreeNode*>& out) {
  if (node.leaf) {
    out.push_back(&node);
    return;
  }
  collect_leaf_nodes(*node.left, out);
  collect_leaf_nodes(*node.right, out);
}

const TreeNode* find_in(const TreeNode& node, int id) {
  if (node.id == id) return &node;
  if (node.leaf) return nullptr;
  if (const TreeNode* hit = find_in(*node.left, id)) return hit;
  return find_in(*node.right, id);
}

}  // namespace

std::vector<const TreeNode*> leaf_nodes(const NrtModel& model) {
  std::vector<const TreeNode*> out;
  if (model.root) collect_leaf_nodes(*model.root, out);
  return out;
}

std::vector<Bin> leaves_of(const NrtModel& model) {
  std::vector<Bin> bins;
  for (const TreeNode* leaf : leaf_nodes(model)) bins.push_back(leaf->bin());
  return bins;
}

const TreeNode* find_node(const NrtModel& model, int id) {
  return model.root ? find_in(*model.root, id) : nullptr;
}

}  // namespace nrt
