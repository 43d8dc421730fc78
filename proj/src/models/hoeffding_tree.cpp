// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "models/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>

#include "common/digest.hpp"
#include "common/error.hpp"
#include "models/gaussian.hpp"

namespace nwa::models {
namespace {

double entropy(const std::vector<double>& dist) {
  double total = 0.0;
  for (double v : dist) total += v;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double v : dist) {
    if (v > 0.0) {
      const double p = v / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

struct SplitCandidate {
  double merit = 0.0;
  FeatureId feature = 0;
  double threshold = 0.0;
  std::vector<double> left;
  std::vector<double> right;
  bool valid = false;
};

std::unique_ptr<TreeNode> clone_node(const TreeNode& n) {
  auto out = std::make_unique<TreeNode>();
  out->leaf = n.leaf;
  out->feature = n.feature;
  out->threshold = n.threshold;
  if (n.left) out->left = clone_node(*n.left);
  if (n.right) out->right = clone_node(*n.right);
  out->counts = n.counts;
  out->depth = n.depth;
  out->observers = n.observers;
  out->allowed = n.allowed;
  out->allowed_drawn = n.allowed_drawn;
  out->last_attempt = n.last_attempt;
  out->mc_correct = n.mc_correct;
  out->nb_correct = n.nb_correct;
  out->monitor = n.monitor;
  if (n.alternate) out->alternate = clone_node(*n.alternate);
  out->alt_samples = n.alt_samples;
  out->alt_errors = n.alt_errors;
  out->main_errors = n.main_errors;
  return out;
}

void digest_node(Digest& d, const TreeNode& n) {
  d.add(n.leaf);
  d.add(n.depth);
  for (double c : n.counts) d.add(c);
  if (n.leaf) {
    std::vector<FeatureId> ids;
    ids.reserve(n.observers.size());
    for (const auto& [id, obs] : n.observers) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (FeatureId id : ids) {
      const auto& obs = n.observers.at(id);
      d.add(static_cast<std::uint64_t>(id));
      for (const auto& cs : obs.per_class) {
        d.add(cs.moments.weight());
        d.add(cs.moments.mean());
        d.add(cs.moments.m2());
      }
    }
    d.add(n.mc_correct);
    d.add(n.nb_correct);
  } else {
    d.add(static_cast<std::uint64_t>(n.feature));
    d.add(n.threshold);
    digest_node(d, *n.left);
    digest_node(d, *n.right);
  }
  d.add(n.alternate != nullptr);
  if (n.alternate) digest_node(d, *n.alternate);
}

std::size_t node_depth(const TreeNode& n) {
  if (n.leaf) return 0;
  return 1 + std::max(node_depth(*n.left), node_depth(*n.right));
}

}  // namespace

ErrorMonitor::ErrorMonitor(int width, double z)
    : bits_(static_cast<std::size_t>(std::max(width, 2) & ~1), 0), z_(z) {}

void ErrorMonitor::clear() {
  std::fill(bits_.begin(), bits_.end(), 0);
  head_ = filled_ = 0;
  older_ = newer_ = 0;
}

bool ErrorMonitor::add(bool error) {
  const std::size_t w = bits_.size();
  const std::size_t half = w / 2;
  if (filled_ == w) {
    older_ -= bits_[head_];
    const std::size_t moving = (head_ + w - half) % w;
    newer_ -= bits_[moving];
    older_ += bits_[moving];
    bits_[head_] = error;
    newer_ += error;
  } else {
    bits_[head_] = error;
    ++filled_;
    if (filled_ == w) {
      older_ = newer_ = 0;
      for (std::size_t i = 0; i < half; ++i) older_ += bits_[i];
      for (std::size_t i = half; i < w; ++i) newer_ += bits_[i];
    }
  }
  head_ = (head_ + 1) % w;
  if (filled_ < w) return false;
  const double h = static_cast<double>(half);
  const double p_old = older_ / h;
  const double p_new = newer_ / h;
  const double p = (older_ + newer_) / (2.0 * h);
  if (p <= 0.0 || p >= 1.0) return false;
  const double z = (p_new - p_old) / std::sqrt(p * (1.0 - p) * (2.0 / h));
  if (z > z_) {
    clear();
    return true;
  }
  return false;
}

void AttributeObserver::update(double value, ClassLabel y, double weight, std::size_t n_classes) {
  if (per_class.empty()) per_class.resize(n_classes);
  auto& cs = per_class[y];
  cs.moments.add(value, weight);
  cs.min = std::min(cs.min, value);
  cs.max = std::max(cs.max, value);
  min = std::min(min, value);
  max = std::max(max, value);
}

std::vector<double> AttributeObserver::weight_at_most(double threshold) const {
  std::vector<double> out(per_class.size(), 0.0);
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    const auto& cs = per_class[c];
    const double w = cs.moments.weight();
    if (w <= 0.0) continue;
    if (threshold < cs.min) {
      out[c] = 0.0;
    } else if (threshold >= cs.max) {
      out[c] = w;
    } else {
      const double sd = std::sqrt(cs.moments.variance());
      out[c] = sd > 0.0 ? w * gaussian_cdf(threshold, cs.moments.mean(), sd)
                        : (threshold >= cs.moments.mean() ? w : 0.0);
    }
  }
  return out;
}

const TreeNode* TreeNode::child(const FeatureVector& x) const {
  if (leaf) return nullptr;
  const double* v = x.find(feature);
  if (!v) return nullptr;
  return *v <= threshold ? left.get() : right.get();
}

std::size_t subtree_size(const TreeNode& node) {
  std::size_t n = 1;
  if (node.left) n += subtree_size(*node.left);
  if (node.right) n += subtree_size(*node.right);
  if (node.alternate) n += subtree_size(*node.alternate);
  return n;
}

HoeffdingTree::HoeffdingTree(std::size_t n_classes, TreeConfig config, std::uint64_t seed)
    : Classifier(n_classes), config_(config), rng_(seed) {
  if (config_.max_depth < 1 || config_.max_size < 1 || config_.grace_period <= 0.0 ||
      config_.delta <= 0.0 || config_.delta >= 1.0 || config_.tie_threshold < 0.0 ||
      config_.split_candidates < 1) {
    fail(ErrorKind::kConfig, "invalid Hoeffding tree configuration");
  }
  root_ = make_leaf(0);
}

HoeffdingTree::HoeffdingTree(const HoeffdingTree& other)
    : Classifier(other),
      config_(other.config_),
      rng_(other.rng_),
      root_(clone_node(*other.root_)),
      nodes_(other.nodes_),
      swaps_(other.swaps_) {}

HoeffdingTree& HoeffdingTree::operator=(const HoeffdingTree& other) {
  if (this != &other) {
    HoeffdingTree copy(other);
    *this = std::move(copy);
  }
  return *this;
}

std::unique_ptr<TreeNode> HoeffdingTree::make_leaf(int depth) const {
  auto n = std::make_unique<TreeNode>();
  n->counts.assign(n_classes(), 0.0);
  n->depth = depth;
  n->monitor = ErrorMonitor(config_.drift_window, config_.drift_z);
  return n;
}

std::size_t HoeffdingTree::depth() const { return node_depth(*root_); }

const TreeNode& HoeffdingTree::sort_down(const TreeNode& node, const FeatureVector& x) const {
  const TreeNode* cur = &node;
  while (const TreeNode* next = cur->child(x)) cur = next;
  return *cur;
}

Proba HoeffdingTree::leaf_nb(const TreeNode& leaf, const FeatureVector& x) const {
  const std::size_t m = n_classes();
  std::vector<double> logp(m, -std::numeric_limits<double>::infinity());
  const double total = sum(leaf.counts);
  for (std::size_t c = 0; c < m; ++c) {
    if (leaf.counts[c] > 0.0) logp[c] = std::log(leaf.counts[c] / total);
  }
  for (const auto& [id, value] : x.values) {
    auto it = leaf.observers.find(id);
    if (it == leaf.observers.end()) continue;
    const auto& pc = it->second.per_class;
    for (std::size_t c = 0; c < m; ++c) {
      if (std::isinf(logp[c])) continue;
      const auto& mo = pc[c].moments;
      if (mo.weight() <= 0.0) continue;
      logp[c] += gaussian_log_pdf(value, mo.mean(), mo.variance());
    }
  }
  const double top = *std::max_element(logp.begin(), logp.end());
  Proba p(m, 0.0);
  for (std::size_t c = 0; c < m; ++c) p[c] = std::isinf(logp[c]) ? 0.0 : std::exp(logp[c] - top);
  normalize(p);
  return p;
}

Proba HoeffdingTree::node_proba(const TreeNode& node, const FeatureVector& x) const {
  if (node.leaf && node.nb_correct > node.mc_correct) return leaf_nb(node, x);
  Proba p = node.counts;
  normalize(p);
  return p;
}

Proba HoeffdingTree::predict_proba_one(const FeatureVector& x) const {
  return node_proba(sort_down(*root_, x), x);
}

void HoeffdingTree::learn_one(const FeatureVector& x, ClassLabel y, double weight) {
  check_label(y);
  if (weight <= 0.0) return;
  learn_tree(root_, x, y, weight);
}

void HoeffdingTree::learn_tree(std::unique_ptr<TreeNode>& root, const FeatureVector& x, ClassLabel y,
                               double w) {
  const ClassLabel pred =
      config_.adaptive ? argmax(node_proba(sort_down(*root, x), x)) : ClassLabel{0};
  learn_node(root, x, y, w, pred);
}

void HoeffdingTree::learn_node(std::unique_ptr<TreeNode>& slot, const FeatureVector& x, ClassLabel y,
                               double w, ClassLabel tree_prediction) {
  TreeNode& node = *slot;
  bool swap = false;
  if (config_.adaptive && !node.leaf) {
    const bool error = tree_prediction != y;
    const bool drift = node.monitor.add(error);
    if (node.alternate) {
      const bool alt_error = argmax(node_proba(sort_down(*node.alternate, x), x)) != y;
      node.alt_samples += 1.0;
      node.alt_errors += alt_error;
      node.main_errors += error;
      if (node.alt_samples >= config_.min_alternate_samples) {
        const double n = node.alt_samples;
        const double p = (node.alt_errors + node.main_errors) / (2.0 * n);
        if (p > 0.0 && p < 1.0) {
          const double z = (node.main_errors - node.alt_errors) / n / std::sqrt(p * (1.0 - p) * 2.0 / n);
          if (z > config_.drift_z) {
            swap = true;
          } else if (z < -config_.drift_z) {
            nodes_ -= subtree_size(*node.alternate);
            node.alternate.reset();
            node.alt_samples = node.alt_errors = node.main_errors = 0.0;
          }
        }
      }
    } else if (drift && nodes_ < static_cast<std::size_t>(config_.max_size) * 1000) {
      node.alternate = make_leaf(node.depth);
      node.alt_samples = node.alt_errors = node.main_errors = 0.0;
      ++nodes_;
    }
  }
  if (node.alternate) learn_tree(node.alternate, x, y, w);
  if (swap) {
    auto alt = std::move(node.alternate);
    nodes_ -= subtree_size(node);
    slot = std::move(alt);
    ++swaps_;
    return;
  }
  if (node.leaf) {
    learn_leaf(node, x, y, w);
    return;
  }
  node.counts[y] += w;
  const double* v = x.find(node.feature);
  if (!v) return;
  learn_node(*v <= node.threshold ? node.left : node.right, x, y, w, tree_prediction);
}

void HoeffdingTree::learn_leaf(TreeNode& leaf, const FeatureVector& x, ClassLabel y, double w) {
  if (sum(leaf.counts) > 0.0) {
    if (argmax(leaf.counts) == y) leaf.mc_correct += w;
    if (argmax(leaf_nb(leaf, x)) == y) leaf.nb_correct += w;
  }
  leaf.counts[y] += w;

  if (config_.leaf_features > 0 && !leaf.allowed_drawn) {
    leaf.allowed_drawn = true;
    std::vector<FeatureId> keys;
    keys.reserve(x.size());
    for (const auto& entry : x.values) keys.push_back(entry.first);
    if (keys.size() > config_.leaf_features) {
      // Partial Fisher-Yates: the first `leaf_features` slots form the subset.
      for (std::size_t i = 0; i < config_.leaf_features; ++i) {
        std::swap(keys[i], keys[i + rng_.below(keys.size() - i)]);
      }
      keys.resize(config_.leaf_features);
    }
    std::sort(keys.begin(), keys.end());
    leaf.allowed = std::move(keys);
  }
  const std::size_t m = n_classes();
  if (leaf.allowed_drawn) {
    for (FeatureId id : leaf.allowed) {
      if (const double* v = x.find(id)) leaf.observers[id].update(*v, y, w, m);
    }
  } else {
    for (const auto& [id, value] : x.values) leaf.observers[id].update(value, y, w, m);
  }
  const double total = sum(leaf.counts);
  if (total - leaf.last_attempt >= config_.grace_period) {
    leaf.last_attempt = total;
    attempt_split(leaf);
  }
}

void HoeffdingTree::attempt_split(TreeNode& leaf) {
  int classes_seen = 0;
  for (double c : leaf.counts) classes_seen += c > 0.0;
  if (classes_seen < 2) return;
  if (leaf.depth >= config_.max_depth) return;
  if (nodes_ + 2 > static_cast<std::size_t>(config_.max_size) * 1000) return;

  SplitCandidate best, second;
  std::vector<double> totals(n_classes());
  for (const auto& [id, obs] : leaf.observers) {
    if (!(obs.max > obs.min)) continue;
    for (std::size_t c = 0; c < totals.size(); ++c) {
      totals[c] = c < obs.per_class.size() ? obs.per_class[c].moments.weight() : 0.0;
    }
    const double total = sum(totals);
    const double pre = entropy(totals);
    SplitCandidate local;
    for (int i = 0; i < config_.split_candidates; ++i) {
      const double t = obs.min + (obs.max - obs.min) * (i + 1) / (config_.split_candidates + 1);
      auto le = obs.weight_at_most(t);
      std::vector<double> gt(le.size());
      for (std::size_t c = 0; c < le.size(); ++c) gt[c] = std::max(0.0, totals[c] - le[c]);
      const double wl = sum(le);
      const double wr = sum(gt);
      if (wl < 0.01 * total || wr < 0.01 * total) continue;
      const double merit = pre - (wl * entropy(le) + wr * entropy(gt)) / total;
      if (!local.valid || merit > local.merit) {
        local = {merit, id, t, std::move(le), std::move(gt), true};
      }
    }
    if (!local.valid) continue;
    auto better = [](const SplitCandidate& a, const SplitCandidate& b) {
      return !b.valid || a.merit > b.merit || (a.merit == b.merit && a.feature < b.feature);
    };
    if (better(local, best)) {
      second = std::move(best);
      best = std::move(local);
    } else if (better(local, second)) {
      second = std::move(local);
    }
  }
  if (!best.valid || best.merit <= 0.0) return;
  const double range = std::log2(static_cast<double>(std::max<std::size_t>(2, n_classes())));
  const double n = sum(leaf.counts);
  const double eps = std::sqrt(range * range * std::log(1.0 / config_.delta) / (2.0 * n));
  const double second_merit = second.valid ? std::max(0.0, second.merit) : 0.0;
  if (!(best.merit - second_merit > eps || eps < config_.tie_threshold)) return;

  leaf.leaf = false;
  leaf.feature = best.feature;
  leaf.threshold = best.threshold;
  leaf.left = make_leaf(leaf.depth + 1);
  leaf.right = make_leaf(leaf.depth + 1);
  leaf.left->counts = best.left;
  leaf.right->counts = best.right;
  leaf.left->last_attempt = sum(best.left);
  leaf.right->last_attempt = sum(best.right);
  leaf.observers.clear();
  leaf.allowed.clear();
  nodes_ += 2;
}

std::uint64_t HoeffdingTree::digest() const {
  Digest d;
  d.add(std::string_view("hatc"));
  d.add(static_cast<std::uint64_t>(nodes_));
  digest_node(d, *root_);
  return d.value();
}

}  // namespace nwa::models
