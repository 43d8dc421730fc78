// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <unordered_map>
#include <vector>

#include "common/numeric.hpp"
#include "common/rng.hpp"
#include "models/model.hpp"

namespace nwa::models {

struct TreeConfig {
  int max_depth = 50;
  double tie_threshold = 0.05;
  int max_size = 50;  // node budget in thousands
  double grace_period = 200.0;
  double delta = 1e-7;
  int split_candidates = 10;
  bool adaptive = true;
  int drift_window = 1000;
  double drift_z = 2.326;  // one-sided 99%
  int min_alternate_samples = 300;
  /// Random key subset drawn per leaf; 0 keeps every key.
  std::size_t leaf_features = 0;
};

/// Sliding window of prediction errors, split into an older and a newer
/// half. Flags drift when the newer half's error rate exceeds the older
/// half's under a two-proportion z-test.
class ErrorMonitor {
 public:
  explicit ErrorMonitor(int width = 1000, double z = 2.326);

  /// Records one outcome; returns true (and clears the window) on drift.
  bool add(bool error);
  void clear();
  std::size_t size() const { return filled_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
  int older_ = 0;
  int newer_ = 0;
  double z_;
};

/// Per-class Gaussian summary of one numeric key at a leaf.
struct AttributeObserver {
  struct ClassStats {
    RunningMoments moments;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
  };
  std::vector<ClassStats> per_class;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void update(double value, ClassLabel y, double weight, std::size_t n_classes);
  /// Estimated class weights at or below `threshold`.
  std::vector<double> weight_at_most(double threshold) const;
};

struct TreeNode {
  bool leaf = true;
  FeatureId feature = 0;
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;   // value <= threshold
  std::unique_ptr<TreeNode> right;  // value > threshold
  std::vector<double> counts;       // class weights that reached this node
  int depth = 0;

  // Leaf learning state.
  std::unordered_map<FeatureId, AttributeObserver> observers;
  std::vector<FeatureId> allowed;  // sorted; empty means unrestricted
  bool allowed_drawn = false;
  double last_attempt = 0.0;
  double mc_correct = 0.0;
  double nb_correct = 0.0;

  // Branch monitoring.
  ErrorMonitor monitor;
  std::unique_ptr<TreeNode> alternate;
  double alt_samples = 0.0;
  double alt_errors = 0.0;
  double main_errors = 0.0;

  const TreeNode* child(const FeatureVector& x) const;
};

/// Hoeffding tree with Gaussian split observers, naive-Bayes-adaptive leaves
/// and, when `adaptive`, per-branch drift monitors that grow and swap in
/// alternate subtrees.
class HoeffdingTree final : public Classifier {
 public:
  HoeffdingTree(std::size_t n_classes, TreeConfig config = {}, std::uint64_t seed = 0);
  HoeffdingTree(const HoeffdingTree& other);
  HoeffdingTree& operator=(const HoeffdingTree& other);
  HoeffdingTree(HoeffdingTree&&) noexcept = default;
  HoeffdingTree& operator=(HoeffdingTree&&) noexcept = default;

  void learn_one(const FeatureVector& x, ClassLabel y, double weight = 1.0) override;
  Proba predict_proba_one(const FeatureVector& x) const override;
  std::uint64_t digest() const override;
  std::unique_ptr<Classifier> clone() const override { return std::make_unique<HoeffdingTree>(*this); }
  std::string_view name() const override { return "hatc"; }

  const TreeNode& root() const { return *root_; }
  const TreeConfig& config() const { return config_; }
  std::size_t node_count() const { return nodes_; }
  std::size_t depth() const;
  std::uint64_t swaps() const { return swaps_; }

 private:
  std::unique_ptr<TreeNode> make_leaf(int depth) const;
  Proba node_proba(const TreeNode& node, const FeatureVector& x) const;
  const TreeNode& sort_down(const TreeNode& node, const FeatureVector& x) const;
  void learn_tree(std::unique_ptr<TreeNode>& root, const FeatureVector& x, ClassLabel y, double w);
  void learn_node(std::unique_ptr<TreeNode>& slot, const FeatureVector& x, ClassLabel y, double w,
                  ClassLabel tree_prediction);
  void learn_leaf(TreeNode& leaf, const FeatureVector& x, ClassLabel y, double w);
  void attempt_split(TreeNode& leaf);
  Proba leaf_nb(const TreeNode& leaf, const FeatureVector& x) const;

  TreeConfig config_;
  Rng rng_;
  std::unique_ptr<TreeNode> root_;
  std::size_t nodes_ = 1;
  std::uint64_t swaps_ = 0;
};

std::size_t subtree_size(const TreeNode& node);

}  // namespace nwa::models
