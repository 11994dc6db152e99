#pragma once

// Structural invariant checks applied to every tree the tests build.

#include <cmath>
#include <vector>

#include "nrt/nrt.hpp"

namespace tree_checks {

struct Violations {
  std::vector<std::string> messages;
  bool ok() const { return messages.empty(); }
};

inline void check_node(const nrt::TreeNode& node, double lo, double hi,
                       Violations& out) {
  if (node.low != lo || node.high != hi) {
    out.messages.push_back("node " + std::to_string(node.id) +
                           ": interval does not match its ancestor cuts");
  }
  if (node.leaf) return;
  if (!(node.threshold > lo && node.threshold < hi)) {
    out.messages.push_back("node " + std::to_string(node.id) +
                           ": threshold escapes the ancestor interval");
  }
  if (node.left->id <= node.id || node.right->id <= node.left->id) {
    out.messages.push_back("node " + std::to_string(node.id) +
                           ": ids are not parent/left-first ordered");
  }
  check_node(*node.left, lo, node.threshold, out);
  check_node(*node.right, node.threshold, hi, out);
}

// Bins sorted, disjoint, contiguous; representatives increasing; thresholds
// nested; routing a response through the thresholds lands in the bin that
// contains it.
inline Violations check_model(const nrt::NrtModel& model,
                              const nrt::Dataset* train = nullptr) {
  Violations out;
  const std::vector<nrt::Bin> bins = nrt::leaves_of(model);
  if (bins.empty()) {
    out.messages.push_back("no leaves");
    return out;
  }
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (!(bins[i].low < bins[i].high)) {
      out.messages.push_back("bin " + std::to_string(i) + ": low >= high");
    }
    if (i + 1 < bins.size()) {
      if (bins[i].high != bins[i + 1].low) {
        out.messages.push_back("bins " + std::to_string(i) + "," +
                               std::to_string(i + 1) + ": not contiguous");
      }
      if (!(bins[i].representative < bins[i + 1].representative)) {
        out.messages.push_back("bin representatives not strictly increasing at " +
                               std::to_string(i));
      }
    }
  }
  check_node(*model.root, model.root->low, model.root->high, out);

  if (train != nullptr) {
    for (const nrt::Sample& s : train->samples) {
      const nrt::TreeNode* node = model.root.get();
      while (!node->leaf) {
        node = s.response < node->threshold ? node->left.get() : node->right.get();
      }
      const std::size_t idx = nrt::partition_of(bins, s.response);
      if (bins[idx].low != node->low || bins[idx].high != node->high) {
        out.messages.push_back("response routing and bin lookup disagree");
        break;
      }
    }
  }
  return out;
}

}  // namespace tree_checks
