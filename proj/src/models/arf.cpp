// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "models/arf.hpp"

#include "common/digest.hpp"
#include "common/error.hpp"

namespace nwa::models {

AdaptiveRandomForest::AdaptiveRandomForest(std::size_t n_classes, ForestConfig config, std::uint64_t seed)
    : Classifier(n_classes), config_(config) {
  if (config_.models < 1 || config_.features < 0 || config_.lambda < 0.0) {
    fail(ErrorKind::kConfig, "invalid forest configuration");
  }
  TreeConfig tc = config_.tree;
  tc.leaf_features = static_cast<std::size_t>(config_.features);
  trees_.reserve(static_cast<std::size_t>(config_.models));
  resample_.reserve(static_cast<std::size_t>(config_.models));
  for (int i = 0; i < config_.models; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    trees_.emplace_back(n_classes, tc, derive_seed(seed, 2 * idx));
    resample_.emplace_back(derive_seed(seed, 2 * idx + 1));
  }
}

void AdaptiveRandomForest::learn_one(const FeatureVector& x, ClassLabel y, double weight) {
  check_label(y);
  if (weight <= 0.0) return;
  const double lambda = config_.effective_lambda();
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    const int k = lambda > 0.0 ? resample_[i].poisson(lambda) : 1;
    if (k == 0) continue;
    trees_[i].learn_one(x, y, weight * k);
    trained_ = true;
  }
}

Proba AdaptiveRandomForest::predict_proba_one(const FeatureVector& x) const {
  Proba total(n_classes(), 0.0);
  if (!trained_) {
    normalize(total);
    return total;
  }
  for (const auto& tree : trees_) {
    const Proba p = tree.predict_proba_one(x);
    for (std::size_t c = 0; c < total.size(); ++c) total[c] += p[c];
  }
  normalize(total);
  return total;
}

std::uint64_t AdaptiveRandomForest::digest() const {
  Digest d;
  d.add(std::string_view("arfc"));
  for (const auto& tree : trees_) d.add(tree.digest());
  return d.value();
}

}  // namespace nwa::models
